"""Catalog completeness, sampling discipline, realization, and the
cross-identity consistency checks (representation pairing, reductions,
and the three relabeled-transform spot checks)."""
import json
import math
import random

import numpy as np
import pytest

from hyptrans.catalog import (
    Family,
    IntervalKind,
    ParamPoint,
    catalog,
    catalog_to_dict,
    get_identity,
    realize_lhs,
    realize_rhs,
    sample_params,
)
from hyptrans.errors import (
    NonIntegrableError,
    PoleError,
    SamplerExhaustedError,
    UnknownIdentityError,
)
from hyptrans.harness import evaluate_lhs
from hyptrans.quadrature import SingularIntegrand, integrate_finite, integrate_semi_infinite
from hyptrans.solutions import SolutionKind, eval_w
from hyptrans.special import HypParams, hyp2f1_raw

EXPECTED_COUNTS = {
    Family.FRAC_I: 3, Family.FRAC_II: 2, Family.FRAC_III: 3,
    Family.WTRANSFORM: 9, Family.STIELTJES: 24, Family.EULER: 12,
    Family.COMPOSITION: 4, Family.KARP_SITNIK: 2,
}

EXPECTED_TAGS = {
    "10", "I:a+c+", "7", "2", "5", "4", "III:a-c-", "6",
    "93", "100", "71", "71:w4", "102", "82", "83", "84", "19",
    "90", "101", "89", "37", "S:b+c+:1", "S:b+c+:2", "S:a+b+c+:1",
    "S:a+b+c+:2", "92", "87", "S:b-:1", "88", "S:a+:1", "S:a+:2",
    "S:b+:1", "S:b+:2", "S:a-b-c-:1", "S:a-b-c-:2", "S:a-c-:1", "91",
    "S:b-c-:1", "S:b-c-:2", "S:c-:1", "S:c-:2",
    "23", "24", "25", "26", "27", "28", "22", "29", "30", "31", "32", "18",
    "14", "86", "94", "95", "96", "97",
}


class TestCompleteness:
    def test_entry_count(self):
        assert len(catalog()) == 59

    def test_family_counts(self):
        counts = {}
        for e in catalog():
            counts[e.family] = counts.get(e.family, 0) + 1
        assert counts == EXPECTED_COUNTS

    def test_tags_unique_and_expected(self):
        tags = [e.paper_eq for e in catalog()]
        assert len(set(tags)) == len(tags)
        assert set(tags) == EXPECTED_TAGS

    def test_ids_unique(self):
        ids = [e.id for e in catalog()]
        assert len(set(ids)) == len(ids)

    def test_lookup(self):
        assert get_identity("F-I-CP").paper_eq == "10"
        with pytest.raises(UnknownIdentityError):
            get_identity("nope")

    def test_spec_shape_of_bateman_entry(self):
        e = get_identity("F-I-CP")
        assert e.lhs.interval is IntervalKind.SEG_0X
        assert e.lhs.y_exp.coeffs() == (-1.0, 0.0, 0.0, 1.0, 0.0)   # c - 1
        assert e.lhs.omy_exp.coeffs() == (0.0, 0.0, 0.0, 0.0, 0.0)
        assert e.lhs.kernel_exp.coeffs() == (-1.0, 0.0, 0.0, 0.0, 1.0)  # mu - 1
        assert e.lhs.gamma_mu_normalized
        assert e.rhs.x_exp.coeffs() == (-1.0, 0.0, 0.0, 1.0, 1.0)   # c + mu - 1
        assert [g.coeffs() for g in e.rhs.gamma_num] == [(0.0, 0.0, 0.0, 1.0, 0.0)]
        assert [g.coeffs() for g in e.rhs.gamma_den] == [(0.0, 0.0, 0.0, 1.0, 1.0)]


class TestSampler:
    def test_deterministic(self):
        spec = get_identity("S-CP-W6toW2")
        assert sample_params(spec, 7, 6) == sample_params(spec, 7, 6)

    def test_seed_changes_points(self):
        spec = get_identity("S-CP-W6toW2")
        assert sample_params(spec, 7, 6) != sample_params(spec, 8, 6)

    def test_margins(self):
        for spec_id in ("F-I-CP", "F-III-AMBMCM", "S-AM-W4toW5", "KS-3F2"):
            spec = get_identity(spec_id)
            for pt in sample_params(spec, 3, 40):
                for con in spec.constraints:
                    assert con(pt) >= 0.05
                assert 0.05 <= pt.mu <= 2.5
                ok_x = any(max(lo, -10.0) + 0.02 <= pt.x <= min(hi, 10.0) - 0.02
                           for lo, hi in spec.x_domain)
                assert ok_x

    def test_bateman_domain(self):
        spec = get_identity("F-I-CP")
        for pt in sample_params(spec, 1, 50):
            assert pt.c >= 0.05 and pt.mu >= 0.05
            assert -10.0 <= pt.x <= 0.98
            assert not (-0.02 < pt.x < 0.02)

    def test_weyl_constraints(self):
        spec = get_identity("F-III-AMBMCM")
        for pt in sample_params(spec, 1, 50):
            assert pt.a >= pt.mu + 0.05 and pt.b >= pt.mu + 0.05

    def test_exhaustion(self):
        from hyptrans.catalog import IdentitySpec
        import dataclasses
        spec = get_identity("F-I-CP")
        # impossible constraint: mu > 5 while the sampler draws mu <= 2.5
        from hyptrans.expr import MU
        broken = dataclasses.replace(spec, constraints=spec.constraints + (MU - 5,))
        with pytest.raises(SamplerExhaustedError):
            sample_params(broken, 0, 1)


class TestRealization:
    def test_constraint_soundness_across_catalog(self):
        # ~1000 sampled points over all entries realize with no integrability
        # or pole failures
        count = 0
        for spec in catalog():
            pts = sample_params(spec, 17, 17)
            for pt in pts:
                rhs = realize_rhs(spec, pt)
                assert math.isfinite(rhs)
                if spec.family is not Family.COMPOSITION:
                    ri = realize_lhs(spec, pt)
                    assert ri.lo < ri.hi
                count += 1
        assert count == 59 * 17

    def test_bateman_integrand_values(self):
        # realized integrand equals the textbook formula at interior points
        a, b, c, mu, x = 0.5, 0.5, 1.2, 0.7, 0.6
        pt = ParamPoint(a, b, c, mu, x)
        ri = realize_lhs(get_identity("F-I-CP"), pt)
        assert (ri.lo, ri.hi) == (0.0, x)
        g = math.gamma(mu)
        for y in (0.05, 0.3, 0.55):
            got = ri.integrand.core(np.array([y]), np.array([y]), np.array([x - y]))[0]
            want = y ** (c - 1) * hyp2f1_raw(a, b, c, y) * (x - y) ** (mu - 1) / g
            assert got == pytest.approx(want, rel=1e-13)
        assert ri.integrand.left_exponent == pytest.approx(c - 1)
        assert ri.integrand.right_exponent == pytest.approx(mu - 1)

    def test_rhs_gamma_vanishing_is_continuous(self):
        spec = get_identity("S-CP-W1toW5")
        base = dict(a=2.4, b=2.2, c=0.6, x=0.7)
        near = realize_rhs(spec, ParamPoint(mu=0.999999, **base))
        at_one = realize_rhs(spec, ParamPoint(mu=1.0, **base))
        assert at_one == 0.0
        assert abs(near) < 1e-4
        # fractional entries have no Gamma(1-mu) factor: nonzero at mu = 1
        frac = realize_rhs(get_identity("F-I-CP"),
                           ParamPoint(a=0.5, b=0.5, c=1.2, mu=1.0, x=0.6))
        assert abs(frac) > 1e-3

    def test_euler_representation_value(self):
        # E-W1 right side reproduces the solution itself
        a, b, c = 0.3, 0.6, 1.4
        pt = ParamPoint(a, b, c, 0.5, 0.5)
        spec = get_identity("E-W1")
        rhs = realize_rhs(spec, pt)
        w1 = eval_w(SolutionKind.W1, 0.5, HypParams(a, b, c))
        gam = math.gamma(b) * math.gamma(c - b) / math.gamma(c)
        assert rhs == pytest.approx(gam * 0.5 ** (c - 1) * w1, rel=1e-13)


class TestExport:
    def test_schema_and_roundtrip(self):
        doc = catalog_to_dict()
        assert doc["version"] == 1
        assert doc["expr_coeffs"] == ["const", "a", "b", "c", "mu"]
        assert len(doc["identities"]) == 59
        text = json.dumps(doc)
        back = json.loads(text)
        e = back["identities"][0]
        assert set(e) >= {"id", "paper_eq", "family", "lhs", "rhs",
                          "constraints", "x_domain"}
        comp = [d for d in back["identities"] if d["family"] == "Composition"]
        assert len(comp) == 4 and all("composition" in d for d in comp)


# ------------------------------------------------------------------ pairing --

# Each integral-representation pair evaluates the same number after the
# argument/parameter swap (a, b, c) -> (a, a-c+1, a-b+1), x -> 1/x; the last
# two pairs coincide pointwise.
PAIRS = [
    ("E-W1", "E-W3-GS", "swap"),
    ("E-W2", "E-W4-GS", "swap"),
    ("E-W3", "E-W1-GS", "swap"),
    ("E-W4", "E-W2-GS", "swap"),
    ("E-W5", "E-W5-GS", "same"),
    ("E-W6", "E-W6-GS", "same"),
]


def _eval_rep(spec_id, pt):
    spec = get_identity(spec_id)
    lhs, _ = evaluate_lhs(spec, pt, rel_tol=1e-11)
    return lhs


class TestEulerPairing:
    @pytest.mark.parametrize("left,right,mode", PAIRS)
    def test_pair(self, left, right, mode):
        lspec = get_identity(left)
        pts = sample_params(lspec, 23, 10)
        for pt in pts:
            lv = _eval_rep(left, pt)
            if mode == "same":
                rv = _eval_rep(right, pt)
                scale = 1.0
                # identical integrals after the change of variables: the
                # right one carries an extra |x|^(1-c) in our normalization
                sl = get_identity(left)
                sr = get_identity(right)
                scale = abs(pt.x) ** (sl.rhs.x_exp(pt) - sr.rhs.x_exp(pt))
                rv = rv * scale
            else:
                # w_left(x; a,b,c) = |x|^(-a) w_right(1/x; a, a-c+1, a-b+1)
                swapped = pt.with_(b=pt.a - pt.c + 1.0, c=pt.a - pt.b + 1.0,
                                   x=1.0 / pt.x)
                rv = _eval_rep(right, swapped)
                sl = get_identity(left)
                sr = get_identity(right)
                scale = (abs(pt.x) ** sl.rhs.x_exp(pt)
                         / abs(swapped.x) ** sr.rhs.x_exp(swapped)
                         * abs(pt.x) ** -pt.a)
                rv = rv * scale
            assert abs(lv - rv) <= 1e-8 * max(abs(lv), 1e-10), (left, right, pt)


# --------------------------------------------------------------- reductions --

class TestReductions:
    def test_bateman_at_integer_mu_matches_iterated_derivative_relation(self):
        # at mu = n the fractional transform is the n-fold parameter-raising
        # integral; both forms share the closed form
        # Gamma(c)/Gamma(c+n) x^(c+n-1) F(a,b;c+n;x)
        spec = get_identity("F-I-CP")
        for n in (1.0, 2.0):
            pts = sample_params(spec, 31, 5, mu_fixed=n)
            for pt in pts:
                lhs, _ = evaluate_lhs(spec, pt, rel_tol=1e-11)
                rhs = realize_rhs(spec, pt)
                assert abs(lhs - rhs) <= 1e-9 * max(abs(rhs), 1e-8)

    def test_ks_2f1_equals_ks_3f2_at_shared_parameters(self):
        # the 3F2 transform with first upper and lower parameters equal
        # collapses to the 2F1 transform: check both integral forms agree
        rng = random.Random(9)
        for _ in range(5):
            a = rng.uniform(0.3, 1.2)
            b = rng.uniform(0.2, 1.0)
            c = rng.uniform(0.2, 1.0)
            mu = rng.uniform(0.2, 1.2)
            e = b + c - a + mu
            if e <= 0.1 or abs(b - c) < 0.05:
                continue
            z = rng.uniform(1.3, 4.0)
            g = None

            def core14(t, d_lo, d_hi):
                with np.errstate(all="ignore"):
                    return (t ** (b - 1.0) * d_hi ** (a + e - b - c - 1.0)
                            * np.array([hyp2f1_raw(a - c, e - c, a + e - b - c,
                                                   zi, oi)
                                        for zi, oi in zip(1.0 - t, t)])
                            * (1.0 - t / z) ** -a)

            def core86(t, d_lo, d_hi):
                with np.errstate(all="ignore"):
                    return (t ** (b - 1.0) * d_hi ** (a + e - b - c - 1.0)
                            * np.array([hyp2f1_raw(a - c, e - c, a + e - b - c,
                                                   zi, oi)
                                        for zi, oi in zip(1.0 - t, t)])
                            * (z - t) ** -a)

            v14, _ = integrate_finite(
                SingularIntegrand(core14, b - 1.0, a + e - b - c - 1.0),
                0.0, 1.0, 1e-11)
            v86, _ = integrate_finite(
                SingularIntegrand(core86, b - 1.0, a + e - b - c - 1.0),
                0.0, 1.0, 1e-11)
            # (z - t)^(-a) = z^(-a) (1 - t/z)^(-a)
            assert abs(v86 - z ** -a * v14) <= 1e-9 * abs(v86)


# --------------------------------------------------- relabeled-cell spot check --

class TestRelabeledCells:
    """Three transform-table cells not in the catalog, derived by relabeling
    a catalog transform through the solution definitions; verified by the
    same quadrature engine."""

    def test_cell_w4_lowering_a(self):
        # int_{y/x>1} |y|^(a-mu-1) w4(y;a,b,c) |x-y|^(mu-1)/G(mu) dy
        #   = G(b-a+1)/G(b-a+mu+1) |x|^(a-1) w4(x;a-mu,b,c)
        a, b, c, mu = 0.97, 0.61, 1.13, 0.32
        for x in (1.8, -1.7):
            p = HypParams(a, b, c)

            def core(y, d_lo, d_hi):
                with np.errstate(all="ignore"):
                    ay = np.abs(y)
                    vals = np.array([eval_w(SolutionKind.W4, yi, p) for yi in y])
                    ker = d_lo if x > 0 else d_hi
                    return (ay ** (a - mu - 1.0) * vals * ker ** (mu - 1.0)
                            / math.gamma(mu))

            integrand = SingularIntegrand(core, mu - 1.0 if x > 0 else 0.0,
                                          0.0 if x > 0 else mu - 1.0,
                                          a - mu - 1.0 - b + mu - 1.0)
            if x > 0:
                val, _ = integrate_semi_infinite(integrand, x, +1, 1e-11)
            else:
                val, _ = integrate_semi_infinite(integrand, x, -1, 1e-11)
            want = (math.gamma(b - a + 1.0) / math.gamma(b - a + mu + 1.0)
                    * abs(x) ** (a - 1.0)
                    * eval_w(SolutionKind.W4, x, HypParams(a - mu, b, c)))
            assert val == pytest.approx(want, rel=1e-9)

    def test_cell_w2_raising_a(self):
        # int_{0<y/x<1} |y|^(c-a-mu-1)(1-y)^(a+b-c) w2(y;a,b,c)|x-y|^(mu-1)/G(mu) dy
        #   = G(1-a-mu)/G(1-a) |x|^(c-a-1)(1-x)^(a+b-c+mu) w2(x;a+mu,b,c)
        a, b, c, mu = 0.17, 0.41, 1.23, 0.32
        for x in (0.6, -1.7):
            def core(y, d_lo, d_hi):
                # |y|^(c-a-mu-1) w2(y) = |y|^(-a-mu) F(a-c+1,b-c+1;2-c;y)
                with np.errstate(all="ignore"):
                    ay = d_lo if x > 0 else d_hi
                    ker = d_hi if x > 0 else d_lo
                    vals = np.array([hyp2f1_raw(a - c + 1.0, b - c + 1.0,
                                                2.0 - c, yi) for yi in y])
                    return (ay ** (-a - mu) * (1.0 - y) ** (a + b - c)
                            * vals * ker ** (mu - 1.0) / math.gamma(mu))

            lo, hi = (0.0, x) if x > 0 else (x, 0.0)
            left = c - a - mu - 1.0 + (1.0 - c) if x > 0 else mu - 1.0
            right = mu - 1.0 if x > 0 else c - a - mu - 1.0 + (1.0 - c)
            val, _ = integrate_finite(SingularIntegrand(core, left, right),
                                      lo, hi, 1e-11)
            want = (math.gamma(1.0 - a - mu) / math.gamma(1.0 - a)
                    * abs(x) ** (c - a - 1.0) * (1.0 - x) ** (a + b - c + mu)
                    * eval_w(SolutionKind.W2, x, HypParams(a + mu, b, c)))
            assert val == pytest.approx(want, rel=1e-9)

    def test_cell_w6_lowering_c(self):
        # int_x^inf |1-y|^(a+b-c) w6(y;a,b,c)(y-x)^(mu-1)/G(mu) dy
        #   = G(c-a-mu)/G(c-a) G(c-b-mu)/G(c-b) G(c-a-b+1)/G(c-a-b-mu+1)
        #     |1-x|^(a+b-c+mu) w6(x;a,b,c-mu)
        a, b, c, mu, x = 0.27, 0.11, 1.43, 0.22, 0.6
        p = HypParams(a, b, c)

        def core(y, d_lo, d_hi):
            with np.errstate(all="ignore"):
                # |1-y| w6 combine to the analytic F(c-a,c-b;c-a-b+1;1-y)
                vals = np.array([hyp2f1_raw(c - a, c - b, c - a - b + 1.0,
                                            1.0 - yi) for yi in y])
                return vals * d_lo ** (mu - 1.0) / math.gamma(mu)

        val, _ = integrate_semi_infinite(
            SingularIntegrand(core, mu - 1.0, 0.0,
                              mu - 1.0 - min(c - a, c - b)), x, +1, 1e-11)
        g = math.gamma
        want = (g(c - a - mu) / g(c - a) * g(c - b - mu) / g(c - b)
                * g(c - a - b + 1.0) / g(c - a - b - mu + 1.0)
                * abs(1.0 - x) ** (a + b - c + mu)
                * eval_w(SolutionKind.W6, x, HypParams(a, b, c - mu)))
        assert val == pytest.approx(want, rel=1e-9)

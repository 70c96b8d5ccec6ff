"""The six solutions on their real domains."""
import math
import random

import pytest

from hyptrans.errors import DomainError
from hyptrans.solutions import SolutionKind, domain_of, eval_w
from hyptrans.special import HypParams, hyp2f1_raw

INF = math.inf

# 50-digit oracle: 3^(-0.4) * 2F1(0.4, 0.3; 1.2; 1/3)
W3_SPOT = 0.66957084523314829684


def test_domains_exact():
    assert domain_of(SolutionKind.W1) == ((-INF, 1.0),)
    assert domain_of(SolutionKind.W2) == ((-INF, 0.0), (0.0, 1.0))
    assert domain_of(SolutionKind.W3) == ((-INF, 0.0), (1.0, INF))
    assert domain_of(SolutionKind.W4) == ((-INF, 0.0), (1.0, INF))
    assert domain_of(SolutionKind.W5) == ((0.0, INF),)
    assert domain_of(SolutionKind.W6) == ((0.0, 1.0), (1.0, INF))


def test_w1_at_zero():
    assert eval_w(SolutionKind.W1, 0.0, HypParams(0.4, 0.9, 1.3)) == 1.0


def test_w2_leading_behavior():
    p = HypParams(0.4, 0.9, 1.3)
    for x in (1e-4, 1e-6):
        got = eval_w(SolutionKind.W2, x, p)
        assert got == pytest.approx(x ** (1.0 - p.c), rel=5e-4)


def test_w3_spot_value():
    got = eval_w(SolutionKind.W3, 3.0, HypParams(0.4, 0.2, 1.1))
    assert got == pytest.approx(W3_SPOT, rel=1e-12)


def test_w3_w4_duality_exact():
    rng = random.Random(2)
    for _ in range(50):
        a, b, c = rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)
        if abs(a - b - round(a - b)) < 0.05 or abs(c - round(c)) < 0.05:
            continue
        x = rng.choice([rng.uniform(-8, -0.1), rng.uniform(1.1, 8)])
        lhs = eval_w(SolutionKind.W4, x, HypParams(a, b, c))
        rhs = eval_w(SolutionKind.W3, x, HypParams(b, a, c))
        assert lhs == rhs  # bitwise: same formula after the swap


def test_w2_scaling_consistency_bitwise():
    rng = random.Random(3)
    for _ in range(50):
        a, b = rng.uniform(-2, 2), rng.uniform(-2, 2)
        c = rng.uniform(0.1, 1.9)
        if abs(c - 1.0) < 0.05:
            continue
        x = rng.uniform(0.05, 0.95)
        p = HypParams(a, b, c)
        direct = abs(x) ** (1.0 - c) * hyp2f1_raw(a - c + 1.0, b - c + 1.0, 2.0 - c, x)
        assert eval_w(SolutionKind.W2, x, p) == direct


@pytest.mark.parametrize("kind,x", [
    (SolutionKind.W1, 1.5),
    (SolutionKind.W2, -0.0),
    (SolutionKind.W3, 0.5),
    (SolutionKind.W5, -0.3),
    (SolutionKind.W6, -2.0),
])
def test_domain_errors(kind, x):
    with pytest.raises(DomainError):
        eval_w(kind, x, HypParams(0.4, 0.9, 1.3))


def test_edge_guard():
    # points within 1e-8 of a finite endpoint are rejected
    with pytest.raises(DomainError):
        eval_w(SolutionKind.W2, 1e-9, HypParams(0.4, 0.9, 1.3))

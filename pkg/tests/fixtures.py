"""Shared example systems used across the test suite."""

from numreg.numeration import PositionalSystem


def sqrt13_system():
    """p = 2, base ((1+sqrt13)/2, (5+sqrt13)/6)."""
    return PositionalSystem([0, 3, 0, 1], [1, 2, 5, 7], name="sqrt13")


def golden_one_system():
    """p = 2, base (phi, 1)."""
    return PositionalSystem([0, 2, 0, 0, 0, -1], [1, 3, 4, 6, 9, 11], name="golden-one")


def zeckendorf_system():
    return PositionalSystem([1, 1], [1, 2], name="zeckendorf")


def running_system():
    """Order 10, p = 5, field Q(sqrt 55); exercises all four vertex kinds."""
    return PositionalSystem([0, 0, 0, 0, 16, 0, 0, 0, 0, -9],
                            [1, 2, 3, 6, 10, 19, 29, 48, 96, 151], name="running")


def rational_p4_system():
    """p = 4 with the all-rational base (4/3, 3/2, 8/3, 3)."""
    return PositionalSystem([2, -4, 8], [1, 3, 8], name="rational-p4")


def period_two_irrational_system():
    """p = 2 with base (3/2, 2); maximal words have no limit."""
    return PositionalSystem([0, 2, 0, 3], [1, 3, 6, 11], name="mixed-p2")


def base_one_two_system():
    """Alternate base (1, 2): a base entry equal to 1."""
    return PositionalSystem([0, 3, 0, -2], [1, 2, 3, 6], name="base-1-2")


def loop_negative_system():
    """p = 3; the path vertex 0 fails the drift criterion: NOT regular."""
    return PositionalSystem(
        [0, 0, 23, 0, 0, 5, 0, 0, -46, 0, 0, -7, 0, 0, 23, 0, 0, 3],
        [1, 4, 9, 20, 70, 175, 489, 1641, 4015, 11294, 37898, 92748,
         261291, 876620, 2145176, 6043562, 20275863, 49617086],
        name="loop-negative")


def sink_positive_system():
    """p = 3 with an infinite expansion at vertex 0: regular."""
    return PositionalSystem(
        [-1, -1, 22, 22, 22, 13, 13, 13, -10, -10, -10, 0, 0],
        [1, 4, 8, 22, 71, 185, 476, 1614, 4179, 10740, 36396, 94271, 242238],
        name="sink-positive")


def drift_system_terms(count):
    """Piecewise-defined sequence whose vertex-1 difference drifts linearly."""
    ts = [1]
    for n in range(1, count):
        if n % 2 == 0:
            ts.append(ts[n - 1] + ts[n - 2] + 1)
        elif n % 10 == 1:
            ts.append(3 * ts[n - 1] - (n - 1) // 2)
        else:
            ts.append(3 * ts[n - 1])
    return ts


def drift_system():
    rec = [0] * 22
    rec[1] = 4
    rec[9] = 2
    rec[11] = -8
    rec[19] = -1
    rec[21] = 4
    return PositionalSystem(rec, drift_system_terms(22), name="drift")


def hollander_system(u1):
    """Characteristic polynomial (X-1)(X-3); regularity depends on U_1."""
    return PositionalSystem([4, -3], [1, u1], name=f"three-plus-{u1}")


def slow_growth_system():
    """U_n = U_{n-2} + 3 from (1, 2): dominant ratio 1, regular."""
    return PositionalSystem([1, 1, -1], [1, 2, 4], name="slow-growth")


def squares_system():
    """U_n = (n+1)^2: dominant ratio 1, not regular."""
    return PositionalSystem([3, -3, 1], [1, 4, 9], name="squares")


def n_3n_system():
    """U_n = n 3^n + 1: very slow settling of the maximal words."""
    return PositionalSystem([7, -15, 9], [1, 4, 19], name="n3n")


def candidate_maxwords_system():
    """Order 9, reconstructed from an explicit maximal-word language."""
    return PositionalSystem([0, 8, 0, -10, 0, 2, 0, 0, 0],
                            [1, 2, 4, 6, 17, 44, 116, 286, 760],
                            name="candidate")


DEG8_RECURRENCE = [0, 2, 0, 2, 0, 0, 0, 2]


def deg8_system(initial, name):
    return PositionalSystem(DEG8_RECURRENCE, list(initial), name=name)


def chain_system(variant):
    """Two systems sharing base (3, (4+sqrt13)/3): the sink vertex fails,
    while the other vertex is regular for variant 1 and not for variant 2."""
    if variant == 1:
        init = [1, 2, 7, 16, 49, 122]
    else:
        init = [1, 2, 6, 14, 42, 105]
    return PositionalSystem([0, 9, 0, -11, 0, 3], init, name=f"chain-{variant}")


def integer_base_system(b):
    return PositionalSystem([b], [1], name=f"base-{b}")


def golden_squared_pair_system():
    """Base (3, phi, phi): regular although no power of the product of the
    base entries has a finite or periodic expansion in the classical sense."""
    return PositionalSystem([0, 0, 9, 0, 0, -9], [1, 2, 3, 9, 15, 24],
                            name="golden-squared")

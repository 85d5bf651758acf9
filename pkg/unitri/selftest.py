"""
The oracle suite behind ``unitri selftest`` and ``verify_theorems.py``.

Each check returns a CheckResult; the suite never raises for a failed check.
Random checks run ``trials`` instances per configuration (UNITRI_SELFTEST_TRIALS).
"""

import itertools
import logging
import math
import random
import time
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
import pandas as pd

from . import config
from .elimination import factor5, factor_sl, gauss
from .errors import UnitriError
from .exactmat import Matrix, det, verify_factorisation
from .monomial import factor_monomial
from .numtheory import find_prime_with_primitive_root, is_primitive_root
from .rings import DirectProduct, Integers, LocalizedIntegers, Rationals, Zmod
from .shears import EulerAngles, euler3, paeth2, toffoli_quick3
from .sl2core import torus4, torus5
from .verify import commutator3, enumerate_sets, random_sl
from .zp import factor_sl2_zp, random_zp_word

_logger = logging.getLogger(__name__)


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str
    seconds: float = 0.0

    def to_json(self):
        return {"name": self.name, "ok": self.ok, "detail": self.detail,
                "seconds": round(self.seconds, 3)}


def _sl2_elements(ring):
    for a, b, c, d in itertools.product(ring.elements(), repeat=4):
        if (a * d - b * c).is_one():
            yield Matrix(ring, ((a, b), (c, d)))


def _checked(f, limit):
    report = verify_factorisation(f)
    if not report.ok:
        return f"verification failed: {report.first_violation}"
    if report.length > limit:
        return f"length {report.length} exceeds {limit}"
    return None


# ===========================
# CHECKS
# ===========================

def check_length4_exhaustive(trials, rng):
    count = 0
    for m in range(2, 10):
        ring = Zmod(m)
        for g in _sl2_elements(ring):
            problem = _checked(factor_sl(g), 4)
            if problem:
                return False, f"Z/{m} {g.key()}: {problem}"
            count += 1
        if not enumerate_sets(ring, 2).length4_complete:
            return False, f"(UU-)^2 != SL(2, Z/{m})"
    return True, f"{count} elements of SL(2, Z/m), m = 2..9"


def check_sharpness(trials, rng):
    for m in range(3, 10):
        report = enumerate_sets(Zmod(m), 2)
        if not report.sharp or report.length3_complete:
            return False, f"Z/{m}: sharp={report.sharp} length3={report.length3_complete}"
    return True, "UU-U meets the torus only in e for m = 3..9"


def check_boolean_length3(trials, rng):
    for k in (1, 2, 3):
        ring = DirectProduct(tuple(Zmod(2) for _ in range(k)))
        if not enumerate_sets(ring, 2).length3_complete:
            return False, f"UU-U != SL(2, F2^{k})"
    return True, "UU-U = SL(2, F2^k) for k = 1..3"


def check_rank_reduction(trials, rng):
    count = 0
    for n, m in itertools.product((3, 4, 5), (4, 6, 9, 101)):
        ring = Zmod(m)
        for _ in range(trials):
            g, _ = random_sl(ring, n, 10, rng.randrange(2 ** 32))
            problem = _checked(factor_sl(g), 4)
            if problem:
                return False, f"n={n} Z/{m}: {problem}"
            count += 1
    return True, f"{count} random words, n = 3, 4, 5"


def check_monomial(trials, rng):
    ring = Integers()
    count = 0
    for n in range(1, 6):
        for perm in itertools.permutations(range(n)):
            for signs in itertools.product((1, -1), repeat=n):
                rows = [[0] * n for _ in range(n)]
                for j, (i, s) in enumerate(zip(perm, signs)):
                    rows[i][j] = s
                g = Matrix.from_rows(ring, rows)
                if not det(g).is_one():
                    continue
                problem = _checked(factor_monomial(g), 4)
                if problem:
                    return False, f"{rows}: {problem}"
                count += 1
    return True, f"{count} signed permutation matrices, n <= 5"


def check_torus(trials, rng):
    ring = Zmod(101)
    for e in range(1, 101):
        eps = ring(e)
        for build in (torus4, torus5):
            if not verify_factorisation(build(eps)).ok:
                return False, f"{build.__name__}({e}) over Z/101"
    q = Rationals()
    for _ in range(100):
        eps = q(Fraction(rng.choice([-1, 1]) * rng.randint(1, 50), rng.randint(1, 50)))
        for build in (torus4, torus5):
            if not verify_factorisation(build(eps)).ok:
                return False, f"{build.__name__}({eps}) over Q"
    return True, "all units of Z/101 and 100 rationals"


def check_gauss(trials, rng):
    count = 0
    for n, m in itertools.product((2, 3, 4), (4, 6, 9)):
        ring = Zmod(m)
        for _ in range(trials):
            g, _ = random_sl(ring, n, 12, rng.randrange(2 ** 32))
            u, t, v, u2 = gauss(g)
            if not (u.is_valid() and v.is_valid() and u2.is_valid() and t.is_diagonal()):
                return False, f"n={n} Z/{m}: bad Gauss shapes"
            problem = _checked(factor5(g), 5)
            if problem:
                return False, f"n={n} Z/{m}: {problem}"
            count += 1
    return True, f"{count} Gauss decompositions and length-5 factorisations"


def check_zp(trials, rng):
    ring = LocalizedIntegers(2)
    golden = Matrix.from_rows(ring, [[1, 3], [Fraction(1, 2), Fraction(5, 2)]])
    f, trace = factor_sl2_zp(golden)
    expected = (4, 13, 4, 1, Fraction(-3, 4))
    got = (trace.k, trace.q, trace.u, trace.l, trace.theta.value.to_fraction())
    if got != expected or f.pattern() != "L U L U L":
        return False, f"worked instance gave {got} / {f.pattern()}"

    count = 0
    for p in (2, 3, 5, 7):
        ring = LocalizedIntegers(p)
        for _ in range(trials):
            word = random_zp_word(ring, 2, 8, rng)
            g = word.product()
            f, trace = factor_sl2_zp(g)
            problem = _checked(f, 5)
            if problem:
                return False, f"p={p}: {problem}"
            if f.length() == 5 and f.pattern() not in ("L U L U L", "U L U L U"):
                return False, f"p={p}: pattern {f.pattern()}"
            if trace.q is not None and not is_primitive_root(p, trace.q):
                return False, f"p={p}: {p} is not a primitive root mod {trace.q}"
            count += 1
    return True, f"worked instance and {count} random SL(2, Z[1/p])"


def check_prime_search(trials, rng):
    found = find_prime_with_primitive_root(1, 3, 2, config.PRIME_SEARCH_K_MAX)
    if found != (4, 13):
        return False, f"(1, 3, 2) gave {found}"
    return True, "q = 13 at k = 4"


def check_shears(trials, rng):
    worst_2d = worst_3d = worst_orth = 0.0
    for _ in range(trials * 50):
        phi = rng.uniform(-math.pi, math.pi)
        if abs(math.cos(phi / 2)) > 0.1:
            worst_2d = max(worst_2d, paeth2(phi).max_abs_error)
        e = EulerAngles(*(rng.uniform(-math.pi, math.pi) for _ in range(3)))
        g = euler3(e)
        worst_orth = max(worst_orth, float(np.max(np.abs(g @ g.T - np.eye(3)))))
        if abs(e.half_sum_cosine()) > 0.1 and abs(e.half_beta_cosine()) > 0.1:
            worst_3d = max(worst_3d, toffoli_quick3(e).max_abs_error)
    ok = worst_2d <= 1e-12 and worst_3d <= 1e-10 and worst_orth <= 1e-12
    return ok, f"residuals 2D {worst_2d:.1e}, 3D {worst_3d:.1e}, orthogonality {worst_orth:.1e}"


def check_commutator(trials, rng):
    count = 0
    for m in range(2, 10):
        for g in _sl2_elements(Zmod(m)):
            decomposition = commutator3(g, factor_sl(g))
            if decomposition.product() != g:
                return False, f"Z/{m} {g.key()}"
            count += 1
    return True, f"{count} commutator decompositions"


CHECKS = [
    ("length4_exhaustive", check_length4_exhaustive),
    ("sharpness", check_sharpness),
    ("boolean_length3", check_boolean_length3),
    ("rank_reduction", check_rank_reduction),
    ("monomial", check_monomial),
    ("torus", check_torus),
    ("gauss_length5", check_gauss),
    ("zp_length5", check_zp),
    ("prime_search", check_prime_search),
    ("shears", check_shears),
    ("commutator", check_commutator),
]


def run_selftest(trials=None, seed=None, only=None):
    trials = config.SELFTEST_TRIALS if trials is None else trials
    seed = config.SEED if seed is None else seed
    results = []
    for name, check in CHECKS:
        if only and name not in only:
            continue
        rng = random.Random(f"{seed}:{name}")
        start = time.perf_counter()
        try:
            ok, detail = check(trials, rng)
        except UnitriError as exc:
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        elapsed = time.perf_counter() - start
        _logger.info("selftest %s: %s (%.2fs)", name, "ok" if ok else "FAILED", elapsed)
        results.append(CheckResult(name, ok, detail, elapsed))
    return results


def results_frame(results):
    rows = [[r.name, r.ok, r.detail, round(r.seconds, 2)] for r in results]
    return pd.DataFrame(rows, columns=['Check', 'OK', 'Detail', 'Seconds'])

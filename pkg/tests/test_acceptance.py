"""Acceptance criteria 1-10, one check each, with exact comparisons.

Each check prints a single ``PASS criterion N: ...`` or ``FAIL criterion N: ...``
line.  Run under pytest or directly with ``python3 tests/test_acceptance.py``.
"""
import random
import sys
import time

import pytest

from eqehrhart import reproduce as rep
from eqehrhart.algebra import binom
from eqehrhart.families import binomial_lower_bound_check, lemma34_check
from eqehrhart.groups import (VirtualCharacter, char_table_cyclic, char_table_dihedral,
                              char_table_product, decompose, reconstruct)

KS, DS = (1, 3, 5), (2, 3, 4)


def _fails(results):
    return [f"{r.target} {r.params}" for r in results if not r.ok]


def crit1():
    t0 = time.perf_counter()
    r = rep.ex22(max_m=10)
    dt = time.perf_counter() - t0
    ok = r.ok and dt < 10
    return ok, f"simplex counts m<=10 and H* = trivial: {r.ok}; {dt:.2f}s (limit 10s)"


def crit2():
    t0 = time.perf_counter()
    res = [rep.thm33(p) for p in (3, 5, 7)]
    p3 = rep.thm33(3)
    explicit = p3.pipeline == [[1, 0, 0], [1, 1, 1], [1, 0, 0]]
    dt = time.perf_counter() - t0
    ok = not _fails(res) and explicit and dt < 300
    return ok, (f"p=3,5,7 tables equal, chi_j equal, effective; p=3 explicit {explicit}; "
                f"failures {_fails(res)}; {dt:.1f}s (limit 300s)")


def crit3():
    t0 = time.perf_counter()
    res = [rep.thm37(d) for d in range(3, 9)]
    dt = time.perf_counter() - t0
    ok = not _fails(res) and dt < 600
    return ok, (f"d=3..8 tables equal, effective, identity = ohsugi_h; "
                f"failures {_fails(res)}; {dt:.1f}s (limit 600s)")


def crit4():
    res = [rep.prop32(d) for d in range(3, 9)]
    return not _fails(res), f"reduced ehr(P^s) for C3..C8 equal; failures {_fails(res)}"


def crit5():
    t0 = time.perf_counter()
    res = []
    for k in KS:
        for d in DS:
            res.append(rep.prop41(k, d))
            res += [rep.prop42_43(k, d, i) for i in range(1, d + 1)]
            res.append(rep.thm44(k, d))
    dt = time.perf_counter() - t0
    ok = not _fails(res) and dt < 300
    return ok, (f"{len(res)} comparisons over k in {KS}, d in {DS}; "
                f"failures {_fails(res)}; {dt:.1f}s (limit 300s)")


def crit6():
    a, b = rep.ex45(1), rep.ex45(2)
    return a.ok and b.ok, (f"P(1,2): polynomial, not effective, chi1,chi1-chi2,chi1, "
                           f"period 1, denominator 2: {a.ok}; 2P(1,2) chi1(1+4t+3t^2) "
                           f"effective: {b.ok}")


def crit7():
    ok_lemma = all(r.margin >= 0 for d in range(3, 22, 2) for r in lemma34_check(d))
    ok_binom = all(h >= c for d in range(3, 12) for _, h, c in binomial_lower_bound_check(d))
    ok_binom = ok_binom and all(
        h == binomial_lower_bound_check(d)[l][1] and c == binom(d - 1, l)
        for d in range(3, 12) for l, h, c in binomial_lower_bound_check(d))
    return ok_lemma and ok_binom, (f"lemma inequality odd d<=21: {ok_lemma}; "
                                   f"h_l >= C(d-1,l) for d<=11: {ok_binom}")


def family_instances():
    sels = [{"family": "simplex-ex22"}, {"family": "simplex-affine"}]
    sels += [{"family": "sep-cycle", "d": p, "group": "dihedral"} for p in (3, 5, 7)]
    sels += [{"family": "sep-cycle", "d": d, "group": "s-only"} for d in range(3, 9)]
    for k in KS:
        for d in DS:
            sels += [{"family": "cross", "k": k, "d": d, "group": {"axis": i}}
                     for i in range(1, d + 1)]
            sels.append({"family": "cross", "k": k, "d": d, "group": "all-reflections"})
    sels += [{"family": "cross", "k": 1, "d": 2, "group": "sigma-d", "dilate": 2}]
    sels += [{"family": "q", "d": d} for d in (3, 4)]
    return sels


def crit8():
    t0 = time.perf_counter()
    res = [rep.oracle_equivalence(sel, extra=10) for sel in family_instances()]
    dt = time.perf_counter() - t0
    return not _fails(res), (f"{len(res)} instances, 10 dilates past the fit; "
                             f"failures {_fails(res)}; {dt:.1f}s")


def _tables():
    tabs = [char_table_cyclic(n) for n in range(1, 13)]
    tabs += [char_table_dihedral(d) for d in range(1, 13)]
    c2, c4 = char_table_cyclic(2), char_table_cyclic(4)
    prods = [char_table_product(*[c2] * r) for r in range(2, 7)]
    prods += [char_table_product(c4, c4, c4), char_table_product(char_table_dihedral(4),
                                                                 char_table_dihedral(4)),
              char_table_product(c2, char_table_dihedral(16)),
              char_table_product(char_table_cyclic(3), char_table_dihedral(10)),
              char_table_product(char_table_dihedral(3), char_table_cyclic(5))]
    return tabs, prods


def crit9():
    tabs, prods = _tables()
    orth = all(T.check_orthogonality() for T in tabs + prods)
    sizes_ok = all(T.group_order <= 64 for T in prods)
    rng = random.Random(20261018)
    roundtrip = True
    for T in tabs[::3] + prods:
        for _ in range(20):
            v = VirtualCharacter(tuple(rng.randint(-6, 6) for _ in range(len(T))))
            roundtrip &= decompose(reconstruct(v, T), T).multiplicities == v.multiplicities
    return orth and sizes_ok and roundtrip, (
        f"orthogonality of {len(tabs) + len(prods)} tables (products up to order 64): {orth}; "
        f"decompose(reconstruct(v)) = v on random samples: {roundtrip}")


def crit10():
    res = [rep.ex46(d) for d in (3, 4)]
    return not _fails(res), f"ehr(P(1,d)) = ehr(Q_d) for d=3,4; failures {_fails(res)}"


CRITERIA = [crit1, crit2, crit3, crit4, crit5, crit6, crit7, crit8, crit9, crit10]


def run_criterion(n):
    try:
        ok, detail = CRITERIA[n - 1]()
    except Exception as exc:  # report, then fail
        ok, detail = False, f"raised {type(exc).__name__}: {exc}"
    line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}"
    return ok, line


@pytest.mark.parametrize("n", range(1, 11))
def test_criterion(n, capsys):
    ok, line = run_criterion(n)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [run_criterion(n) for n in range(1, 11)]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)

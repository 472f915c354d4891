"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line."""

import math
import time

import pytest

from metacyclic import catalog
from metacyclic.searches import centralizer_class, involution_candidates, verify_bounds
from metacyclic.dataset import ConeDatum, format_dataset, is_irreducible, parse
from metacyclic.enumeration import enumerate_all, enumerate_datasets
from metacyclic.homology import (check_relation, chain_form, hyperelliptic_matrix, level_m_member,
                                 order_on_homology, polygon_curves, polygon_form, rotation_matrix, word_matrix)
from metacyclic.intmat import Matrix
from metacyclic.multitwist import PseudoPeriodicDataSet, twist_factor
from metacyclic.pairs import CERTIFIED, NECESSARY, ConfiguredPair, check_metacyclic
from metacyclic.presentations import FINITE_BY_Z, Z_BY_FINITE, PresentationClass, element_type

from test_presentations import oracle_finite_by_z, oracle_z_by_finite


@pytest.fixture
def report(capsys):
    def emit(number, ok, detail=""):
        with capsys.disabled():
            print(f"\ncriterion {number}: {'PASS' if ok else 'FAIL'}" + (f"  ({detail})" if detail else ""))
        assert ok, detail
    return emit


def test_criterion_1_enumeration_g2(report):
    start = time.perf_counter()
    found = enumerate_all(2)
    elapsed = time.perf_counter() - start
    needed = ["(2,0;(1,2),(1,2),(1,2),(1,2),(1,2),(1,2))", "(6,0;(1,2),(1,2),(1,3),(2,3))",
              "(5,0;(4,5),(3,5),(3,5))"]
    reducible = [ds for ds in found if not is_irreducible(ds)]
    ok = (all(parse(x) in found for x in needed)
          and any(ds.n == 10 for ds in found)
          and not any(ds.n == 9 for ds in found)
          and all(ds.n <= 6 for ds in reducible)
          and all(str(ds.signature()) == "(0;2,2,3,3)" for ds in reducible if ds.n == 6)
          and elapsed < 10)
    report(1, ok, f"{len(found)} data sets in {elapsed:.2f}s")


def test_criterion_2_order_sweep(report):
    start = time.perf_counter()
    failures = []
    for g in range(2, 7):
        if enumerate_datasets(g, 4 * g + 1):
            failures.append(f"g={g}: degree {4 * g + 1} present")
        if not verify_bounds(g).passed:
            failures.append(f"g={g}: bounds report fails")
        found = enumerate_all(g)
        reducible = [ds for ds in found if not is_irreducible(ds)]
        top = max(ds.n for ds in reducible)
        sigs = {str(ds.signature()) for ds in reducible if ds.n == top}
        if g % 2 == 0 and (top != 2 * g + 2 or sigs != {f"(0;2,2,{g + 1},{g + 1})"}):
            failures.append(f"g={g}: reducible max {top} {sigs}")
        if g % 2 == 1 and top > 2 * g:
            failures.append(f"g={g}: reducible max {top}")
        if any(not is_irreducible(ds) for ds in found if ds.n == 4 * g + 2):
            failures.append(f"g={g}: reducible entry of degree {4 * g + 2}")
    elapsed = time.perf_counter() - start
    report(2, not failures and elapsed < 180, "; ".join(failures) or f"g=2..6 in {elapsed:.2f}s")


def test_criterion_3_twist_factors(report):
    assemblies = {name: PseudoPeriodicDataSet.from_json(obj) for name, obj in catalog.assembly_inputs().items()}
    d60 = assemblies["assembly_degree60"]
    checks = [
        twist_factor(ConeDatum(3, 5), 5, ConeDatum(3, 5), 5) == -1,
        twist_factor(ConeDatum(7, 8), 8, ConeDatum(1, 10), 10) == -1,
        [p.q for p in d60.pairings] == [-3, 4] and d60.genus() == 6,
        (assemblies["assembly_self_glued_degree5"].degree, assemblies["assembly_self_glued_degree5"].genus()) == (5, 3),
        (assemblies["assembly_degree40"].degree, assemblies["assembly_degree40"].genus()) == (40, 4),
    ]
    report(3, all(checks), f"checks {checks}")


def test_criterion_4_compatibility_family(report):
    values = {g: twist_factor(ConeDatum(g, 2 * g + 1), 2 * g + 1, ConeDatum(g + 1, 2 * g + 1), 2 * g + 1)
              for g in range(2, 11)}
    report(4, all(v == 0 for v in values.values()), f"{values}")


def test_criterion_5_homology_fixtures(report):
    start = time.perf_counter()
    failures = []
    for g in range(2, 6):
        rot = rotation_matrix(g)
        order = order_on_homology(rot)
        if order.order != 4 * g or rot ** (2 * g) != -Matrix.identity(2 * g):
            failures.append(f"g={g}: rotation order {order.order}")
        mf = word_matrix(catalog.penner_word(g), polygon_form(g), polygon_curves(g))
        if not (check_relation(mf, rot, -1) and check_relation(mf, rot ** 2, 1)):
            failures.append(f"g={g}: relation")
        if order_on_homology(mf).kind != "infinite":
            failures.append(f"g={g}: no infinite-order certificate")
    elapsed = time.perf_counter() - start
    report(5, not failures and elapsed < 30, "; ".join(failures) or f"g=2..5 in {elapsed:.2f}s")


def test_criterion_6_level_m(report):
    failures = []
    for g in range(2, 6):
        form = chain_form(g)
        classes = {lab: form.basis(lab) for lab in form.labels}
        mf = word_matrix([tuple(x) for x in catalog.penner_squares(g)["word"]], form, classes)
        if not level_m_member(mf, 2):
            failures.append(f"g={g}: not I mod 2")
        if not check_relation(mf, hyperelliptic_matrix(form.matrix.dim), 1):
            failures.append(f"g={g}: does not commute with the hyperelliptic matrix")
    if level_m_member(rotation_matrix(2), 2):
        failures.append("rotation_matrix(2) is I mod 2")
    report(6, not failures, "; ".join(failures))


def test_criterion_7_pair_checker(report):
    start = time.perf_counter()
    failures = []
    expected_levels = {"structure": CERTIFIED, "i": CERTIFIED, "ii": CERTIFIED, "iii": CERTIFIED, "v": CERTIFIED}
    for name, obj in catalog.pair_fixtures().items():
        v = check_metacyclic(ConfiguredPair.from_json(obj))
        if not v.passed:
            failures.append(f"{name} fails {v.failed()}")
        for c in v.conditions:
            want = expected_levels.get(c.name)
            if want and c.level != want:
                failures.append(f"{name}: condition {c.name} at level {c.level}")
            if c.name == "iv" and c.level not in (CERTIFIED, NECESSARY):
                failures.append(f"{name}: condition iv at level {c.level}")
    muts = catalog.pair_mutations()
    escaped = [f"{m.fixture}: {m.description}" for m in muts
               if check_metacyclic(ConfiguredPair.from_json(m.pair)).passed]
    failures += [f"mutation escaped: {e}" for e in escaped]
    if len(muts) < 10:
        failures.append(f"only {len(muts)} mutations")
    elapsed = time.perf_counter() - start
    report(7, not failures and elapsed < 10,
           "; ".join(failures) or f"{len(catalog.pair_fixtures())} fixtures, {len(muts)} mutations rejected")


def test_criterion_8_element_types(report):
    start = time.perf_counter()
    mismatches = []
    for m in range(1, 7):
        pres = PresentationClass(Z_BY_FINITE, -1, g_order=2 * m)
        for i in range(-8, 9):
            for j in range(-8, 9):
                et = element_type(i, j, pres)
                if (et.order if et.periodic else None) != oracle_z_by_finite(i, j, 2 * m):
                    mismatches.append((2 * m, i, j))
    for n in range(2, 13):
        for k in range(1, n):
            if math.gcd(k, n) != 1:
                continue
            pres = PresentationClass(FINITE_BY_Z, k, n=n)
            for i in range(-8, 9):
                for j in range(-8, 9):
                    et = element_type(i, j, pres)
                    if (et.order if et.periodic else None) != oracle_finite_by_z(i, j, n, k):
                        mismatches.append((n, k, i, j))
    elapsed = time.perf_counter() - start
    report(8, not mismatches and elapsed < 30, f"{len(mismatches)} mismatches in {elapsed:.2f}s")


def test_criterion_9_centralizers(report):
    start = time.perf_counter()
    failures = []
    counted = {"cyclic": 0, "bounded": 0}
    for g in (2, 3):
        expected = involution_candidates(g)
        if g % 2 == 0:
            want = [f"(2,0;{','.join(['(1,2)'] * (2 * g + 2))})", f"(2,{g // 2};(1,2),(1,2))"]
        else:
            want = [f"(2,0;{','.join(['(1,2)'] * (2 * g + 2))})", f"(2,{(g + 1) // 2},1;-)"]
        if [format_dataset(c) for c in expected] != want:
            failures.append(f"g={g}: candidate list {[format_dataset(c) for c in expected]}")
        for ds in enumerate_all(g):
            if not is_irreducible(ds):
                continue
            res = centralizer_class(ds)
            distinct = len({(c.d, c.m) for c in ds.cone}) == 3
            if ds.n > 2 * g + 2 or distinct:
                ok = res.kind == "cyclic"
            else:
                ok = res.kind == "bounded" and [format_dataset(c) for c in res.candidates] == want
            counted[res.kind] += 1
            if not ok:
                failures.append(f"g={g}: {format_dataset(ds)} -> {res.kind}")
    elapsed = time.perf_counter() - start
    report(9, not failures and elapsed < 30 and all(counted.values()),
           "; ".join(failures) or f"{counted} in {elapsed:.2f}s")

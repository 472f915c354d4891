"""Exhaustive enumeration of data sets of a given genus."""

from __future__ import annotations

import math
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from itertools import combinations_with_replacement, product

from .dataset import ConeDatum, CyclicDataSet, Signature, is_irreducible, power

WORKERS_ENV = "METACYCLIC_WORKERS"


def _units(m: int) -> list[int]:
	return [d for d in range(1, m) if math.gcd(d, m) == 1]


def _order_multisets(divisors: list[int], n: int, budget: int, start: int = 0):
	# each cone point of order m contributes n - n/m to the Riemann-Hurwitz sum
	if budget == 0:
		yield ()
		return
	for i in range(start, len(divisors)):
		m = divisors[i]
		cost = n - n // m
		if cost > budget:
			break
		for rest in _order_multisets(divisors, n, budget - cost, i):
			yield (m,) + rest


def _signature_ok(n: int, g0: int, orders: tuple[int, ...]) -> bool:
	if len(orders) == 1:
		return False
	full = math.lcm(*orders) if orders else 1
	for i in range(len(orders)):
		rest = orders[:i] + orders[i + 1:]
		if (math.lcm(*rest) if rest else 1) != full:
			return False
	return not (g0 == 0 and full != n)


def signatures(g: int, n: int) -> list[Signature]:
	"""Signatures (g0; m1..mk) compatible with an order-n action on genus g."""
	divisors = [m for m in range(2, n + 1) if n % m == 0]
	found = []
	g0 = 0
	while n * (2 * g0 - 2) <= 2 * g - 2:
		budget = 2 * g - 2 - n * (2 * g0 - 2)
		for orders in _order_multisets(divisors, n, budget):
			if _signature_ok(n, g0, orders):
				found.append(Signature(g0, orders))
		g0 += 1
	return found


def _datasets_for(n: int, sig: Signature) -> list[CyclicDataSet]:
	if not sig.orders:
		return [CyclicDataSet(n, sig.g0, r) for r in _units(n)]
	groups = sorted(Counter(sig.orders).items())
	choices = [list(combinations_with_replacement(_units(m), c)) for m, c in groups]
	out = []
	for pick in product(*choices):
		cone = tuple(ConeDatum(d, m) for (m, _), ds in zip(groups, pick) for d in ds)
		if sum((n // c.m) * c.d for c in cone) % n == 0:
			out.append(CyclicDataSet(n, sig.g0, 0, cone))
	return out


def enumerate_datasets(g: int, n: int) -> list[CyclicDataSet]:
	"""All data sets of genus g and degree n, one per conjugacy class, sorted."""
	if g < 2 or n < 2:
		raise ValueError("need g >= 2 and n >= 2")
	out = [ds for sig in signatures(g, n) for ds in _datasets_for(n, sig)]
	return sorted(ds.canonical() for ds in out)


def _worker_count(workers: int | None) -> int:
	if workers is None:
		workers = int(os.environ.get(WORKERS_ENV, "1") or 1)
	return max(1, workers)


def enumerate_all(g: int, workers: int | None = None) -> list[CyclicDataSet]:
	"""Union of enumerate_datasets(g, n) over 2 <= n <= 4g+2.

	The worker count defaults to the ``METACYCLIC_WORKERS`` environment
	variable; the merged result does not depend on it.
	"""
	degrees = list(range(2, 4 * g + 3))
	w = _worker_count(workers)
	if w == 1:
		chunks = [enumerate_datasets(g, n) for n in degrees]
	else:
		with ProcessPoolExecutor(max_workers=w) as pool:
			chunks = list(pool.map(enumerate_datasets, [g] * len(degrees), degrees))
	return [ds for chunk in chunks for ds in chunk]


def counts_by_degree(datasets) -> dict[int, int]:
	c = Counter(ds.n for ds in datasets)
	return dict(sorted(c.items()))


def irreducible_only(datasets) -> list[CyclicDataSet]:
	return [ds for ds in datasets if is_irreducible(ds)]


def power_orbits(datasets) -> list[list[CyclicDataSet]]:
	"""Group data sets into classes generating the same cyclic subgroup."""
	seen: set = set()
	orbits = []
	for ds in datasets:
		if ds in seen:
			continue
		orbit = sorted({power(ds, k) for k in range(1, ds.n) if math.gcd(k, ds.n) == 1})
		seen.update(orbit)
		orbits.append(orbit)
	return orbits

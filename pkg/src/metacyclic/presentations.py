"""The three infinite metacyclic presentations and orders of their elements.

Every group here is generated by F (normal generator) and G with
G^-1 F G = F^k.  Elements are written G^i F^j.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

Z_BY_Z = "Z:Z"            # <F, G | G^-1 F G = F^k>, k = +-1
Z_BY_FINITE = "Z:Z_2m"    # <F, G | G^2m = 1, G^-1 F G = F^-1>
FINITE_BY_Z = "Z_n:Z"     # <F, G | F^n = 1, G^-1 F G = F^k>


@dataclass(frozen=True)
class PresentationClass:
	kind: str
	k: int
	n: int | None = None          # order of F for Z_n:Z
	g_order: int | None = None    # order of G (= 2m) for Z:Z_2m
	swapped: bool = False         # True when the roles of F and G were exchanged

	def __post_init__(self) -> None:
		if self.kind == Z_BY_Z:
			ok = self.k in (1, -1) and self.n is None and self.g_order is None
		elif self.kind == Z_BY_FINITE:
			ok = self.k == -1 and self.g_order is not None and self.g_order >= 2 and self.g_order % 2 == 0
		elif self.kind == FINITE_BY_Z:
			ok = self.n is not None and self.n >= 1 and math.gcd(self.k, self.n) == 1 and 0 <= self.k < max(self.n, 2)
		else:
			ok = False
		if not ok:
			raise ValueError(f"parameters out of range for {self.kind}: k={self.k}, n={self.n}, order(G)={self.g_order}")

	@property
	def label(self) -> str:
		if self.kind == Z_BY_Z:
			return "Z×Z" if self.k == 1 else "Z⋊_{-1}Z"
		if self.kind == Z_BY_FINITE:
			return f"Z⋊_{{-1}}Z_{self.g_order}"
		if self.k == 1:
			return f"Z_{self.n}×Z"
		k = self.k - self.n if 2 * self.k > self.n else self.k
		return f"Z_{self.n}⋊_{{{k}}}Z"

	def to_json(self) -> dict:
		return {"kind": self.kind, "k": self.k, "n": self.n, "g_order": self.g_order,
			"swapped": self.swapped, "label": self.label}

	@classmethod
	def from_json(cls, obj: dict) -> PresentationClass:
		return cls(obj["kind"], int(obj["k"]), obj.get("n"), obj.get("g_order"), bool(obj.get("swapped", False)))


def classify_presentation(n_f: int | None, g_order: int | None, k: int,
		power_relation: tuple[int, int] | None = None) -> PresentationClass:
	"""Pick the presentation of <F, G> from the orders of F and G.

	``None`` means infinite order.  ``power_relation`` = (r, u) records an
	extra relation F^r = G^u between two infinite-order generators.
	"""
	if n_f is not None and g_order is not None:
		raise ValueError("both generators are periodic; the group is finite")
	if n_f is None:
		if k not in (1, -1):
			raise ValueError(f"k must be +-1 when F has infinite order, got {k}")
		if g_order is None:
			if power_relation and all(power_relation):
				if k != 1:
					raise ValueError("a power relation forces k = 1")
				r, u = power_relation
				d = math.gcd(r, u)
				return PresentationClass(FINITE_BY_Z, 1 % d, n=d, swapped=True)
			return PresentationClass(Z_BY_Z, k)
		if k == -1:
			if g_order % 2:
				raise ValueError("an odd-order G cannot invert an infinite-order F")
			return PresentationClass(Z_BY_FINITE, -1, g_order=g_order)
		# commuting: Z x Z_m, i.e. Z_m:Z with G as the torsion generator
		return PresentationClass(FINITE_BY_Z, 1 % g_order, n=g_order, swapped=True)
	if math.gcd(k, n_f) != 1:
		raise ValueError(f"k={k} is not a unit mod {n_f}")
	return PresentationClass(FINITE_BY_Z, k % n_f if n_f > 1 else 0, n=n_f)


@dataclass(frozen=True)
class ElementType:
	periodic: bool
	order: int | None

	def __str__(self) -> str:
		return f"periodic of order {self.order}" if self.periodic else "infinite order"


def geometric_sum(k: int, i: int, ell: int) -> int:
	"""1 + k^i + ... + k^(i(ell-1)) for i >= 0; k = -1 handled for any i."""
	if k == 1:
		return ell
	if k == -1:
		return ell if i % 2 == 0 else ell % 2
	return sum(k ** (i * t) for t in range(ell))


def word_power(i: int, j: int, ell: int, pres: PresentationClass) -> tuple[int, int]:
	"""Normal form (G exponent, F exponent) of (G^i F^j)^ell, reduced where torsion allows."""
	if pres.kind == FINITE_BY_Z:
		n = pres.n
		# k^i mod n for negative i uses the inverse unit
		ki = pow(pres.k, i, n) if n > 1 else 0
		s = sum(pow(ki, t, n) for t in range(ell)) % n if n > 1 else 0
		return i * ell, j * s % n if n > 1 else 0
	if pres.kind == Z_BY_FINITE:
		m2 = pres.g_order
		return i * ell % m2, j * geometric_sum(-1, i % 2, ell)
	return i * ell, j * geometric_sum(pres.k, i % 2, ell)


def element_type(i: int, j: int, pres: PresentationClass) -> ElementType:
	"""Decide whether G^i F^j has finite order, and which."""
	if pres.kind == Z_BY_Z:
		return ElementType(True, 1) if i == 0 and j == 0 else ElementType(False, None)
	if pres.kind == FINITE_BY_Z:
		if i != 0:
			return ElementType(False, None)
		n = pres.n
		return ElementType(True, n // math.gcd(j, n))
	# G^i has order o, so the element has finite order iff its o-th power,
	# which lies in <F>, is trivial
	m2 = pres.g_order
	o = m2 // math.gcd(i % m2, m2)
	_, f_exp = word_power(i, j, o, pres)
	return ElementType(True, o) if f_exp == 0 else ElementType(False, None)

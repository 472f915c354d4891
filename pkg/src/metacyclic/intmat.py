"""Exact integer matrices and polynomials (no floating point anywhere)."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence


class Matrix:
	__slots__ = ("rows",)

	def __init__(self, rows: Iterable[Iterable[int]]):
		self.rows = tuple(tuple(int(x) for x in r) for r in rows)
		if any(len(r) != len(self.rows) for r in self.rows):
			raise ValueError("matrices here are square")

	@classmethod
	def identity(cls, n: int) -> Matrix:
		return cls([[int(i == j) for j in range(n)] for i in range(n)])

	@property
	def dim(self) -> int:
		return len(self.rows)

	def __eq__(self, other: object) -> bool:
		return isinstance(other, Matrix) and self.rows == other.rows

	def __hash__(self) -> int:
		return hash(self.rows)

	def __repr__(self) -> str:
		return f"Matrix({[list(r) for r in self.rows]})"

	def __getitem__(self, ij: tuple[int, int]) -> int:
		return self.rows[ij[0]][ij[1]]

	@property
	def T(self) -> Matrix:
		return Matrix(zip(*self.rows))

	def __neg__(self) -> Matrix:
		return Matrix([[-x for x in r] for r in self.rows])

	def __add__(self, other: Matrix) -> Matrix:
		return Matrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

	def __sub__(self, other: Matrix) -> Matrix:
		return self + (-other)

	def __matmul__(self, other: Matrix) -> Matrix:
		cols = list(zip(*other.rows))
		return Matrix([[sum(a * b for a, b in zip(r, c)) for c in cols] for r in self.rows])

	def apply(self, v: Sequence[int]) -> tuple[int, ...]:
		return tuple(sum(a * b for a, b in zip(r, v)) for r in self.rows)

	def trace(self) -> int:
		return sum(self.rows[i][i] for i in range(self.dim))

	def is_identity(self) -> bool:
		return self == Matrix.identity(self.dim)

	def mod(self, m: int) -> Matrix:
		return Matrix([[x % m for x in r] for r in self.rows])

	def inverse(self) -> Matrix:
		"""Inverse over the integers; raises if the determinant is not +-1."""
		n = self.dim
		a = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(self.rows)]
		for col in range(n):
			piv = next((r for r in range(col, n) if a[r][col] != 0), None)
			if piv is None:
				raise ValueError("singular matrix")
			a[col], a[piv] = a[piv], a[col]
			p = a[col][col]
			a[col] = [x / p for x in a[col]]
			for r in range(n):
				if r != col and a[r][col] != 0:
					f = a[r][col]
					a[r] = [x - f * y for x, y in zip(a[r], a[col])]
		inv = [row[n:] for row in a]
		if any(x.denominator != 1 for row in inv for x in row):
			raise ValueError("matrix is not invertible over the integers")
		return Matrix([[int(x) for x in row] for row in inv])

	def __pow__(self, e: int) -> Matrix:
		base = self if e >= 0 else self.inverse()
		e = abs(e)
		out = Matrix.identity(self.dim)
		while e:
			if e & 1:
				out = out @ base
			base = base @ base
			e >>= 1
		return out

	def to_json(self) -> list[list[int]]:
		return [list(r) for r in self.rows]


def charpoly(m: Matrix) -> list[int]:
	"""Coefficients (constant term first) of det(xI - M), by Faddeev-LeVerrier."""
	n = m.dim
	coeffs = [0] * (n + 1)
	coeffs[n] = 1
	ident = Matrix.identity(n)
	aux = Matrix([[0] * n for _ in range(n)])
	for k in range(1, n + 1):
		aux = m @ aux + Matrix([[coeffs[n - k + 1] * x for x in r] for r in ident.rows])
		t = (m @ aux).trace()
		assert t % k == 0
		coeffs[n - k] = -t // k
	return coeffs


# --- integer polynomials, constant term first -------------------------------------

def _trim(p: list[int]) -> list[int]:
	p = list(p)
	while len(p) > 1 and p[-1] == 0:
		p.pop()
	return p


def poly_divmod(p: Sequence[int], d: Sequence[int]) -> tuple[list[int], list[int]]:
	"""Division by a monic integer polynomial."""
	p, d = _trim(p), _trim(d)
	if d[-1] != 1:
		raise ValueError("divisor must be monic")
	if len(p) < len(d):
		return [0], p
	q = [0] * (len(p) - len(d) + 1)
	r = list(p)
	for i in range(len(q) - 1, -1, -1):
		c = r[i + len(d) - 1]
		q[i] = c
		for j, dj in enumerate(d):
			r[i + j] -= c * dj
	return _trim(q), _trim(r[:len(d) - 1] or [0])


@lru_cache(maxsize=None)
def cyclotomic(d: int) -> tuple[int, ...]:
	p = [-1] + [0] * (d - 1) + [1]
	for e in range(1, d):
		if d % e == 0:
			p, r = poly_divmod(p, cyclotomic(e))
			assert r == [0]
	return tuple(p)


def _totient(d: int) -> int:
	out, x, f = d, d, 2
	while f * f <= x:
		if x % f == 0:
			while x % f == 0:
				x //= f
			out -= out // f
		f += 1
	if x > 1:
		out -= out // x
	return out


def cyclotomic_part(p: Sequence[int]) -> tuple[dict[int, int], list[int]]:
	"""Split p into cyclotomic factors (index -> multiplicity) and a cofactor.

	The cofactor has no root of unity among its roots.
	"""
	deg = len(_trim(p)) - 1
	rest = _trim(p)
	found: dict[int, int] = {}
	d = 1
	# phi(d) >= sqrt(d/2), so no relevant index exceeds 2*deg^2
	while d <= max(2, 2 * deg * deg):
		if _totient(d) <= deg:
			cyc = cyclotomic(d)
			while len(rest) >= len(cyc):
				q, r = poly_divmod(rest, cyc)
				if r != [0]:
					break
				rest = q
				found[d] = found.get(d, 0) + 1
		d += 1
	return found, rest

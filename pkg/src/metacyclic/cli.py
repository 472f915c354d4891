"""Command-line interface.

Every command builds a CommandResult and prints it as text (default), JSON or
TSV.  Exit codes: 0 pass, 1 mathematical violation, 2 usage or parse error.

TSV for ``enumerate`` has the fixed columns

    degree  g0  r  signature  irreducible  dataset

followed by one ``#counts`` footer row (``degree=count`` pairs) and one
``#total`` row.  Other commands print ``key<TAB>value`` rows with JSON values.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

from . import catalog
from ._text import ParseError, Reader
from .searches import centralizer_class, search_abelian_zm, search_dihedral_extension, verify_bounds
from .dataset import ConeDatum, DataSetError, format_dataset, genus, is_irreducible, parse, validate
from .enumeration import counts_by_degree, enumerate_all, enumerate_datasets, irreducible_only
from .homology import (HomologyError, check_relation, level_m_member, load_word_file, order_on_homology,
	polygon_curves, polygon_form, preserves, rotation_matrix, spectral_lower_bound, word_matrix)
from .multitwist import AssemblyError, PseudoPeriodicDataSet, twist_factor
from .pairs import ConfiguredPair, PairError, check_level_m, check_metacyclic
from .presentations import FINITE_BY_Z, Z_BY_FINITE, Z_BY_Z, PresentationClass, element_type

OK, VIOLATION, ERROR = "ok", "violation", "error"
EXIT = {OK: 0, VIOLATION: 1, ERROR: 2}


@dataclass
class CommandResult:
	status: str
	payload: dict = field(default_factory=dict)
	diagnostics: list[str] = field(default_factory=list)
	text: list[str] = field(default_factory=list)
	tsv: list[str] | None = None

	def to_json(self) -> dict:
		return {"status": self.status, "payload": self.payload, "diagnostics": self.diagnostics}


class UsageError(Exception):
	pass


def _load_json(path: str) -> dict:
	try:
		return json.loads(Path(path).read_text())
	except OSError as exc:
		raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
	except json.JSONDecodeError as exc:
		raise UsageError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}") from exc


def _status(ok: bool) -> str:
	return OK if ok else VIOLATION


# --- data sets ----------------------------------------------------------------------

def cmd_enumerate(args) -> CommandResult:
	if args.genus < 2:
		raise UsageError("--genus must be at least 2")
	if args.order is not None:
		if args.order < 1:
			raise UsageError("--order must be positive")
		found = enumerate_datasets(args.genus, args.order)
	else:
		found = enumerate_all(args.genus)
	if args.irreducible_only:
		found = irreducible_only(found)
	counts = counts_by_degree(found)
	rows = [{"dataset": ds.to_json(), "literal": format_dataset(ds), "signature": str(ds.signature()),
		"irreducible": is_irreducible(ds)} for ds in found]
	payload = {"genus": args.genus, "order": args.order, "irreducible_only": args.irreducible_only,
		"datasets": rows, "footer": {"counts": {str(k): v for k, v in counts.items()}, "total": len(found)}}
	text = [r["literal"] for r in rows]
	text.append(f"-- {len(found)} data sets; by degree: " + (", ".join(f"{k}: {v}" for k, v in counts.items()) or "none"))
	tsv = ["degree\tg0\tr\tsignature\tirreducible\tdataset"]
	tsv += [f"{ds.n}\t{ds.g0}\t{ds.r}\t{r['signature']}\t{str(r['irreducible']).lower()}\t{r['literal']}"
		for ds, r in zip(found, rows)]
	tsv.append("#counts\t" + ",".join(f"{k}={v}" for k, v in counts.items()))
	tsv.append(f"#total\t{len(found)}")
	return CommandResult(OK, payload, [], text, tsv)


def cmd_validate(args) -> CommandResult:
	ds = parse(args.dataset)
	rep = validate(ds)
	payload = {"dataset": ds.to_json(), "valid": rep.ok, "structural": list(rep.structural),
		"violations": list(rep.violations),
		"genus": None if rep.genus is None else str(rep.genus)}
	text = ["valid" if rep.ok else "invalid"] + rep.describe()
	return CommandResult(_status(rep.ok), payload, rep.describe(), text)


def cmd_genus(args) -> CommandResult:
	ds = parse(args.dataset)
	rep = validate(ds)
	if not rep.ok:
		return CommandResult(VIOLATION, {"dataset": ds.to_json(), "genus": None}, rep.describe(), rep.describe())
	g = genus(ds)
	return CommandResult(OK, {"dataset": ds.to_json(), "genus": g}, [], [str(g)])


def cmd_irreducible(args) -> CommandResult:
	ds = parse(args.dataset)
	rep = validate(ds)
	if not rep.ok:
		return CommandResult(VIOLATION, {"dataset": ds.to_json(), "irreducible": None}, rep.describe(), rep.describe())
	irr = is_irreducible(ds)
	return CommandResult(OK, {"dataset": ds.to_json(), "irreducible": irr}, [], [str(irr).lower()])


# --- assembly -------------------------------------------------------------------------

def _cone_arg(text: str) -> ConeDatum | None:
	if text.strip().lower() == "principal":
		return None
	rd = Reader(text)
	rd.expect("(")
	d = rd.integer()
	rd.expect(",")
	m = rd.integer()
	rd.expect(")")
	rd.end()
	if m < 1:
		raise rd.fail("cone order must be positive")
	return ConeDatum(d % m, m)


def cmd_twist_factor(args) -> CommandResult:
	a, b = _cone_arg(args.a), _cone_arg(args.b)
	k = twist_factor(a, args.n_a, b, args.n_b)
	n = math.lcm(args.n_a, args.n_b)
	payload = {"twist_factor": k, "modulus": n, "compatible": k != 0}
	text = [f"twist factor {k} over n={n}" + ("" if k else " (no twist: the orbits glue periodically)")]
	return CommandResult(OK, payload, [], text)


def cmd_assemble(args) -> CommandResult:
	obj = _load_json(args.file)
	try:
		pds = PseudoPeriodicDataSet.from_json(obj)
	except AssemblyError as exc:
		where = [] if exc.pairing is None else [f"pairing {exc.pairing}"]
		return CommandResult(VIOLATION, {"pairing": exc.pairing}, where + [str(exc)], where + [str(exc)])
	payload = {"degree": pds.degree, "genus": pds.genus(), "exponents": [p.q for p in pds.pairings],
		"twist_factors": [p.twist_factor for p in pds.pairings], "structural_only": pds.structural_only,
		"literal": str(pds), "assembly": pds.to_json()}
	text = [str(pds), f"minimal degree {pds.degree}", f"total genus {pds.genus()}"]
	text += [f"pairing {i}: k_t = {p.twist_factor} over {p.modulus}, q = {p.q}" for i, p in enumerate(pds.pairings)]
	diags = ["orbit sizes above 1: only structural checks were made"] if pds.structural_only else []
	return CommandResult(OK, payload, diags, text + diags)


# --- metacyclic engine ------------------------------------------------------------------

def _verdict_text(v) -> list[str]:
	lines = []
	for c in v.conditions:
		lines.append(f"{c.name}: {'pass' if c.passed else 'FAIL'} [{c.level}]")
		lines += [f"    {d}" for d in c.details]
	lines.append(f"verdict: {'pass' if v.passed else 'FAIL'} ({v.certification})")
	if v.ambient_genus is not None:
		lines.append(f"ambient genus {v.ambient_genus}")
	if v.presentation is not None:
		lines.append(f"group {v.presentation.label}")
	return lines


def cmd_check(args) -> CommandResult:
	pair = ConfiguredPair.from_json(_load_json(args.file))
	v = check_metacyclic(pair)
	return CommandResult(_status(v.passed), {**v.to_json(), "k": pair.k}, [str(n) for n in v.notes], _verdict_text(v))


def cmd_level(args) -> CommandResult:
	pair = ConfiguredPair.from_json(_load_json(args.file))
	v = check_level_m(pair, args.m)
	return CommandResult(_status(v.passed), v.to_json(), [], _verdict_text(v))


def _slots(arg: str | None) -> tuple[int, int] | None:
	if arg is None:
		return None
	try:
		a, b = (int(x) for x in arg.split(","))
	except ValueError as exc:
		raise UsageError("--slots takes two comma-separated indices") from exc
	return a, b


def cmd_search_zm(args) -> CommandResult:
	ds = parse(args.dataset)
	hits = search_abelian_zm(ds, _slots(args.slots))
	payload = {"dataset": ds.to_json(), "hits": [h.to_json() for h in hits]}
	text = [f"Z×Z_{h.m}: k' = {h.k_prime}, k = {h.k}" for h in hits] or ["no abelian extension found"]
	return CommandResult(_status(bool(hits)), payload, [], text)


def cmd_dihedral(args) -> CommandResult:
	ds = parse(args.dataset)
	res = search_dihedral_extension(ds, _slots(args.slots))
	text = []
	for o in res.options:
		text.append(f"a={o.a}, b={o.b} (slots {o.slots[0]},{o.slots[1]}): {o.group} in genus {o.ambient_genus}")
		text.append(f"    {o.construction}")
	return CommandResult(_status(bool(res.options)), res.to_json(), [], text or ["no order-n pair of cone points"])


def cmd_bounds(args) -> CommandResult:
	if args.genus < 2:
		raise UsageError("--genus must be at least 2")
	rep = verify_bounds(args.genus)
	text = [f"claim {c.name}: {'pass' if c.passed else 'FAIL'}  {c.detail}" for c in rep.claims]
	text += [f"assumed: {a}" for a in rep.assumptions]
	return CommandResult(_status(rep.passed), rep.to_json(), [], text)


def cmd_centralizer(args) -> CommandResult:
	res = centralizer_class(parse(args.dataset))
	text = ["centralizer is <F>" if res.kind == "cyclic" else "centralizer is <F, H> with H an involution among:"]
	text += [f"    {format_dataset(c)}" for c in res.candidates]
	return CommandResult(OK, res.to_json(), [], text)


PRESENTATIONS = {"zz": Z_BY_Z, "z-z2m": Z_BY_FINITE, "zn-z": FINITE_BY_Z}


def cmd_element_type(args) -> CommandResult:
	kind = PRESENTATIONS[args.pres]
	try:
		if kind == Z_BY_Z:
			pres = PresentationClass(kind, args.k)
		elif kind == Z_BY_FINITE:
			pres = PresentationClass(kind, -1, g_order=args.g_order)
		else:
			if args.n is None:
				raise UsageError("--n is required for zn-z")
			pres = PresentationClass(kind, args.k % args.n, n=args.n)
	except ValueError as exc:
		raise UsageError(str(exc)) from exc
	et = element_type(args.i, args.j, pres)
	payload = {"presentation": pres.to_json(), "i": args.i, "j": args.j, "periodic": et.periodic, "order": et.order}
	return CommandResult(OK, payload, [], [f"G^{args.i} F^{args.j} in {pres.label}: {et}"])


# --- homology ------------------------------------------------------------------------------

def cmd_polygon(args) -> CommandResult:
	g = args.genus
	if g < 2:
		raise UsageError("--genus must be at least 2")
	rot = rotation_matrix(g)
	order = order_on_homology(rot)
	payload: dict = {"genus": g, "rotation_order": order.order, "preserves_form": preserves(rot, polygon_form(g))}
	text = [f"rotation by one side: order {order.order}"]
	ok = order.order == 4 * g
	if args.relation:
		mf = word_matrix(catalog.penner_word(g), polygon_form(g), polygon_curves(g))
		inv = check_relation(mf, rot, -1)
		sq = check_relation(mf, rot ** 2, 1)
		cert = order_on_homology(mf)
		bound = spectral_lower_bound(mf)
		payload.update({"relation_k_minus_1": inv, "relation_square": sq, "f_order": cert.to_json(),
			"spectral_lower_bound": bound.to_json()})
		text += [f"G^-1 F G = F^-1 at homology: {'certified' if inv else 'FAILS'}",
			f"G^-2 F G^2 = F at homology: {'certified' if sq else 'FAILS'}",
			f"F: {cert.certificate}", f"spectral radius of F >= {bound.approx:.4f}"]
		ok = ok and inv and sq and cert.kind == "infinite"
	return CommandResult(_status(ok), payload, [], text)


def _workers(value: int | None) -> int:
	if value is not None:
		return value
	return int(os.environ.get("METACYCLIC_WORKERS", "1") or 1)


def cmd_fixtures_run(args) -> CommandResult:
	if not args.all:
		raise UsageError("only 'fixtures run --all' is supported")
	outcomes = catalog.run_all(_workers(args.workers))
	failed = [o.name for o in outcomes if not o.passed]
	text = [f"{'PASS' if o.passed else 'FAIL'}  {o.name}" for o in outcomes]
	text.append(f"{len(outcomes) - len(failed)}/{len(outcomes)} fixtures pass")
	return CommandResult(_status(not failed), {"fixtures": [o.to_json() for o in outcomes], "failed": failed},
		[f"failed: {n}" for n in failed], text)


def cmd_fixtures_export(args) -> CommandResult:
	paths = catalog.export(args.dir)
	return CommandResult(OK, {"written": [str(p) for p in paths]}, [], [str(p) for p in paths])


def cmd_homology_level(args) -> CommandResult:
	if args.m < 2:
		raise UsageError("--m must be at least 2")
	_, mat = load_word_file(_load_json(args.file))
	member = level_m_member(mat, args.m)
	payload = {"m": args.m, "member": member, "matrix": mat.to_json()}
	return CommandResult(_status(member), payload, [], ["member" if member else f"not congruent to I mod {args.m}"])


# --- parser ----------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
	fmt = argparse.ArgumentParser(add_help=False)
	fmt.add_argument("--format", choices=["text", "json", "tsv"], default="text")

	p = argparse.ArgumentParser(prog="metacyclic", description="Periodic data sets, multitwist roots and metacyclic pairs.")
	sub = p.add_subparsers(dest="command", required=True)

	def add(parent, name: str, func: Callable, help_: str) -> argparse.ArgumentParser:
		sp = parent.add_parser(name, parents=[fmt], help=help_)
		sp.set_defaults(func=func)
		return sp

	sp = add(sub, "enumerate", cmd_enumerate, "list data sets of a genus")
	sp.add_argument("--genus", type=int, required=True)
	sp.add_argument("--order", type=int)
	sp.add_argument("--irreducible-only", action="store_true")
	for name, func, help_ in (("validate", cmd_validate, "check the conditions on a data-set literal"),
			("genus", cmd_genus, "surface genus of a data-set literal"),
			("irreducible", cmd_irreducible, "whether a data-set literal is irreducible")):
		add(sub, name, func, help_).add_argument("dataset")

	sp = add(sub, "twist-factor", cmd_twist_factor, "twist factor of two glued orbits")
	sp.add_argument("a", help="cone datum such as (3,5), or 'principal'")
	sp.add_argument("n_a", type=int)
	sp.add_argument("b")
	sp.add_argument("n_b", type=int)
	add(sub, "assemble", cmd_assemble, "assemble a pseudo-periodic data set from a JSON file").add_argument("file")

	meta = sub.add_parser("metacyclic", help="metacyclic pairs and extension searches")
	msub = meta.add_subparsers(dest="action", required=True)
	add(msub, "check", cmd_check, "check a configured pair").add_argument("file")
	sp = add(msub, "level", cmd_level, "check a pair against a level-m criterion")
	sp.add_argument("--m", type=int, required=True)
	sp.add_argument("file")
	for name, func, help_ in (("search-zm", cmd_search_zm, "look for a Z x Z_m extension of a periodic class"),
			("dihedral", cmd_dihedral, "look for a root inverting a periodic class")):
		sp = add(msub, name, func, help_)
		sp.add_argument("dataset")
		sp.add_argument("--slots")
	add(msub, "bounds", cmd_bounds, "verify the order bounds").add_argument("--genus", type=int, required=True)
	add(msub, "centralizer", cmd_centralizer, "centralizer of an irreducible class").add_argument("dataset")
	sp = add(msub, "element-type", cmd_element_type, "order of G^i F^j")
	sp.add_argument("--pres", choices=sorted(PRESENTATIONS), required=True)
	sp.add_argument("--k", type=int, default=-1)
	sp.add_argument("--n", type=int)
	sp.add_argument("--g-order", type=int)
	sp.add_argument("--i", type=int, required=True)
	sp.add_argument("--j", type=int, required=True)

	hom = sub.add_parser("homology", help="integer-matrix checks")
	hsub = hom.add_subparsers(dest="action", required=True)
	sp = add(hsub, "polygon", cmd_polygon, "rotation of the 4g-gon")
	sp.add_argument("--genus", type=int, required=True)
	sp.add_argument("--relation", action="store_true")
	sp = add(hsub, "level", cmd_homology_level, "level-m membership of a word")
	sp.add_argument("--m", type=int, required=True)
	sp.add_argument("file")
	fx = hsub.add_parser("fixtures", help="built-in fixture corpus")
	fsub = fx.add_subparsers(dest="fixture_action", required=True)
	sp = add(fsub, "run", cmd_fixtures_run, "run fixtures")
	sp.add_argument("--all", action="store_true")
	sp.add_argument("--workers", type=int)
	add(fsub, "export", cmd_fixtures_export, "write fixture files").add_argument("--dir", default="fixtures")
	return p


def _emit(res: CommandResult, fmt: str, out) -> None:
	if fmt == "json":
		out.write(json.dumps(res.to_json(), indent=2, ensure_ascii=False) + "\n")
		return
	if fmt == "tsv":
		rows = res.tsv
		if rows is None:
			rows = [f"status\t{res.status}"] + [f"{k}\t{json.dumps(v, ensure_ascii=False)}" for k, v in res.payload.items()]
			rows += [f"#diagnostic\t{d}" for d in res.diagnostics]
		out.write("\n".join(rows) + "\n")
		return
	out.write("\n".join(res.text) + "\n")


def run(argv: list[str] | None = None, out=None) -> int:
	out = out or sys.stdout
	parser = build_parser()
	try:
		args = parser.parse_args(argv)
	except SystemExit as exc:
		return int(exc.code or 0)
	fmt = getattr(args, "format", "text")
	try:
		res = args.func(args)
	except ParseError as exc:
		res = CommandResult(ERROR, {"position": exc.position}, [str(exc)], [f"parse error: {exc}"])
	except (UsageError, PairError, HomologyError, KeyError, TypeError) as exc:
		res = CommandResult(ERROR, {}, [str(exc)], [f"error: {exc}"])
	except (DataSetError, AssemblyError) as exc:
		res = CommandResult(VIOLATION, {}, [str(exc)], [str(exc)])
	except ValueError as exc:
		res = CommandResult(ERROR, {}, [str(exc)], [f"error: {exc}"])
	_emit(res, fmt, out)
	return EXIT[res.status]


def main() -> None:
	sys.exit(run())

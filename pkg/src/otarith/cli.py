"""Command line interface: ``otarith <subcommand> [flags] <input.json>``.

Exit codes: 0 success, 2 refusal (a hypothesis of the computation fails),
1 anything else.  Reports are deterministic JSON (or CSV for ``growth``).
"""

import argparse
import os
import sys
from pathlib import Path

from . import __version__, growth, ideals, intervals, numfield, ot, ray, units
from .corpus import corpus
from .document import dumps, parse_input
from .errors import MissingUnitBasis, OtArithError, Refusal, ShapeError

COMMANDS = ("field-info", "aut", "h1", "ray", "exceptional", "inequality", "growth", "chain", "verify")


class Context:
    """Objects built from an input document (lazily, so refusals surface per command)."""

    def __init__(self, doc, bits, cap):
        self.doc = doc
        self.bits = bits
        self.cap = cap
        self.field = numfield.build_field(doc.min_poly, doc.integral_basis)
        self._basis = None
        self._autos = None

    def element(self, coords):
        return self.field.element(coords)

    @property
    def autos(self):
        if self._autos is None:
            self._autos = numfield.field_automorphisms(self.field, self.bits)
        return self._autos

    def basis(self, required=True):
        if self._basis is None:
            K = self.field
            if self.doc.units is not None:
                us = [self.element(v) for v in self.doc.units]
                for u in us:
                    if not numfield.is_totally_positive(u):
                        raise ShapeError("declared totally positive unit is not totally positive")
                self._basis = units.UnitBasis(K, us, self.doc.provenance or "input")
            elif K.signature == (1, 1):
                self._basis = units.rank1_fundamental_unit_search(K, bits=self.bits)
            elif required:
                raise MissingUnitBasis("no unit basis given and the field is not of signature (1, 1)")
        return self._basis

    def subgroup(self):
        if self.doc.subgroup is None:
            b = self.basis()
            return b.subgroup()
        return units.UnitSubgroup(self.field, [self.element(v) for v in self.doc.subgroup])

    def modulus(self):
        m = self.doc.modulus
        K = self.field
        if m is None:
            raise ShapeError("the document has no modulus section")
        if m["from_subgroup"]:
            mod = ray.build_exceptional_modulus(self.subgroup())
            finite = mod.finite
        else:
            finite = ideals.ideal_from_generators(K, [self.element(v) for v in m["finite_generators"]])
        rp = m["real_places"]
        real = (1,) * K.s if rp == "all" else tuple(rp)
        if len(real) != K.s:
            raise ShapeError(f"expected {K.s} real multiplicities, got {len(real)}")
        return ray.Modulus(K, finite, real)


# -- record builders -----------------------------------------------------------------

def _elem(a):
    return {"coords": list(a.coords), "power": list(a.power_coords)}


def _group(G):
    return {"divisors": list(G.divisors), "order": G.order}


def _ideal(I):
    return {"norm": I.norm(), "hnf": [list(r) for r in I.basis]}


def _basis_record(B):
    if B is None:
        return None
    return {"units": [_elem(u) for u in B.units], "provenance": B.provenance,
            "certificate": B.certificate or None}


def _auto(g):
    return list(g.image.power_coords)


def cmd_field_info(ctx, args):
    K = ctx.field
    emb = K.embeddings(ctx.bits)
    places = []
    for r in emb.places:
        box = r.box()
        places.append({"re": box.re, "im": box.im, "real": r.is_real})
    import sympy

    maximal = {}
    for p, e in sorted(sympy.factorint(abs(int(K.discriminant))).items()):
        if e >= 2:
            maximal[str(p)] = numfield.dedekind_maximality_check(K, p)
    return {
        "degree": K.degree,
        "signature": list(K.signature),
        "discriminant": K.discriminant,
        "polynomial_discriminant": K.poly_discriminant,
        "power_index": K.power_index,
        "integral_basis": [list(r) for r in K.basis],
        "embeddings": places,
        "automorphisms": [_auto(g) for g in ctx.autos],
        "p_maximal": maximal,
        "complex_place_convention": "representative with positive imaginary part",
    }


def _filtration_record(rep):
    return {
        "gr0": _group(rep.gr0),
        "gr0_isomorphism": "non-canonical",
        "gr1": _group(rep.gr1) if rep.gr1 is not None else None,
        "gr1_order": rep.gr1_order,
        "gr1_status": rep.gr1_status,
        "gr2": [_auto(g) for g in rep.gr2],
        "gr2_order": len(rep.gr2),
        "chi_f": rep.chi_f,
        "j_ideal": _ideal(rep.j_ideal),
    }


def cmd_aut(ctx, args):
    U = ctx.subgroup()
    B = ctx.basis(required=False)
    rep = ot.aut_filtration(ctx.field, U, B, ctx.autos)
    cert = units.is_admissible(U, ctx.bits)
    out = _filtration_record(rep)
    out["admissibility"] = {"log_det": list(cert.log_det), "note": cert.note or None}
    out["unit_basis"] = _basis_record(B)
    out["group_scope"] = "totally positive quotient O^{x,+}/U"
    return out


def cmd_h1(ctx, args):
    U = ctx.subgroup()
    h = ot.h1_structure(ctx.field, U)
    return {
        "torsion": _group(h.torsion),
        "free_rank": h.free_rank,
        "generator_bound": h.generator_bound,
        "generator_count": h.generator_count,
        "bound_holds": h.bound_holds,
        "torsion_bound_holds": h.torsion.rank <= h.generator_bound,
    }


def _ray_units_record(R):
    return {"generators": [_elem(g) for g in R.subgroup.generators], "exponents": R.exponents,
            "index": R.index, "residue_unit_group": _group(R.residue_group.group)}


def cmd_ray(ctx, args):
    mod = ctx.modulus()
    B = ctx.basis()
    R = ray.ray_unit_group(mod, B, ctx.cap)
    out = {"modulus": {"finite": _ideal(mod.finite), "real": list(mod.real)},
           "ray_unit_group": _ray_units_record(R)}
    if mod.all_real_marked:
        rr = ray.ray_ratio(mod, B, ctx.cap)
        out.update({"residue_unit_order": rr.residue_unit_order, "unit_quotient_order": rr.unit_quotient_order,
                    "ratio": rr.ratio, "sign_index": rr.sign_index, "sign_index_assumed": rr.sign_index_assumed})
    return out


def cmd_exceptional(ctx, args):
    mod = ctx.modulus()
    ex = ray.is_exceptional(mod, ctx.basis(), ctx.cap)
    return {"exceptional": ex.exceptional, "reason": ex.reason or None, "contained": ex.contained,
            "j_of_ray_units": ex.j_basis, "m0": ex.m0_basis}


def cmd_inequality(ctx, args):
    mod = ctx.modulus()
    B = ctx.basis()
    r = ray.verify_inequality(mod, B, ctx.cap, ctx.autos)
    return {
        "modulus": {"finite": _ideal(mod.finite), "real": list(mod.real)},
        "ray_unit_group": _ray_units_record(r.ray_units),
        "lhs": r.lhs,
        "rhs": r.rhs,
        "rhs_from_filtration": r.rhs_from_filtration,
        "holds": r.holds,
        "equality": r.equality,
        "residue_unit_order": r.residue_unit_order,
        "quotient_order": r.quotient_order,
        "unit_quotient_order": r.unit_quotient_order,
        "full_unit_quotient": r.full_unit_quotient,
    }


def _growth_unit(ctx):
    if ctx.doc.subgroup:
        return ctx.element(ctx.doc.subgroup[0])
    return ctx.basis().units[0]


def cmd_growth(ctx, args):
    u = _growth_unit(ctx)
    rep = growth.growth_report(ctx.field, u, args.horizon, ctx.bits)
    if args.output == "csv":
        lines = ["n,torsion,log_term_lo,log_term_hi"]
        for t in rep.terms:
            lo, hi = intervals.decimal_pair(t.log_term)
            lines.append(f"{t.n},{t.torsion},{lo},{hi}")
        return "\n".join(lines) + "\n"
    return {
        "unit": _elem(u),
        "min_poly": rep.min_poly,
        "terms": [{"n": t.n, "torsion": t.torsion, "log_term": t.log_term} for t in rep.terms],
        "mahler_measure": rep.mahler,
        "log_limit": rep.log_limit,
        "limit_gap": rep.limit_gap,
        "half_horizon_gap": rep.half_gap,
        "gap_decreasing": rep.trend_ok,
    }


def cmd_chain(ctx, args):
    if args.prime is None or args.depth is None:
        raise ShapeError("chain needs --prime and --depth")
    u = _growth_unit(ctx)
    levels = growth.covering_chain(ctx.field, u, args.prime, args.depth)
    return {"prime": args.prime, "levels": [
        {"level": lv.level, "n": lv.n, "torsion": lv.torsion, "h1_torsion": _group(lv.h1.torsion),
         "divides_next": lv.divides_next} for lv in levels]}


def cmd_verify(ctx, args):
    """Run the invariant suite on one document; every check reports pass or fail."""
    K = ctx.field
    checks = []

    def check(name, fn):
        try:
            ok = bool(fn())
            checks.append({"check": name, "ok": ok})
        except OtArithError as exc:
            checks.append({"check": name, "ok": False, "error": exc.code, "message": str(exc)})

    elems = [K.element([(i * 7 + j * 3) % 5 - 2 for j in range(K.degree)]) for i in range(1, 5)]
    check("norm multiplicative", lambda: all((a * b).norm() == a.norm() * b.norm()
                                               for a in elems for b in elems))
    check("signature", lambda: K.s + 2 * K.t == K.degree)
    check("order is maximal", lambda: all(numfield.dedekind_maximality_check(K, p)
                                          for p in _square_primes(K.discriminant)))
    check("automorphisms fix the minimal polynomial",
          lambda: all(numfield._eval_poly_at(list(K.min_poly), g.image).is_zero() for g in ctx.autos))
    if ctx.doc.subgroup is not None or ctx.basis(required=False) is not None:
        U = ctx.subgroup()
        J = units.j_ideal(U)
        check("ideal inversion I (O:I) = O", lambda: ideals.inverse_fractional(J) is not None)
        check("residue unit paths agree", lambda: _paths_agree(J, ctx.cap))
        check("H1 torsion order equals |O/J|", lambda: ot.h1_structure(K, U).torsion.order == J.norm())
        if U.rank == 1:
            u = U.generators[0]
            check("torsion order oracles agree", lambda: all(
                growth.torsion_order(K, u, n) == growth.torsion_order_resultant(K, u, n) for n in range(1, 9)))
        if ctx.doc.modulus is not None:
            mod = ctx.modulus()
            B = ctx.basis()
            check("J(U_m1) inside m0", lambda: ray.is_exceptional(mod, B, ctx.cap).contained)
            check("ray ratio integral", lambda: ray.ray_ratio(mod, B, ctx.cap).ratio >= 1)
    return {"checks": checks, "all_ok": all(c["ok"] for c in checks)}


def _square_primes(d):
    import sympy

    return [p for p, e in sympy.factorint(abs(int(d))).items() if e >= 2]


def _paths_agree(J, cap):
    if J.norm() > cap:
        return True
    try:
        phi = ideals.residue_unit_count_phi(J)
    except OtArithError:
        return True
    return phi == ideals.residue_unit_count_enum(J, cap)


HANDLERS = {
    "field-info": cmd_field_info,
    "aut": cmd_aut,
    "h1": cmd_h1,
    "ray": cmd_ray,
    "exceptional": cmd_exceptional,
    "inequality": cmd_inequality,
    "growth": cmd_growth,
    "chain": cmd_chain,
    "verify": cmd_verify,
}


def build_parser():
    p = argparse.ArgumentParser(prog="otarith", description="Arithmetic invariants of OT manifolds X(K, U).")
    p.add_argument("--version", action="version", version=f"otarith {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("input", help="input document (JSON), or - for stdin")
        _common_flags(sp)
        if name == "chain":
            sp.add_argument("--prime", type=int)
            sp.add_argument("--depth", type=int)
    cp = sub.add_parser("corpus", help="write the bundled corpus documents")
    cp.add_argument("--out", help="directory to write <name>.json files into (default: print a listing)")
    return p


def _common_flags(sp):
    sp.add_argument("--precision-bits", type=int, default=None)
    sp.add_argument("--enum-cap", type=int, default=None)
    sp.add_argument("--horizon", type=int, default=None)
    sp.add_argument("--output", choices=("json", "csv"), default="json")


def _resolve_options(doc, args):
    bits = args.precision_bits or doc.options.get("precision_bits", 128)
    if args.enum_cap is not None:
        cap = args.enum_cap
    elif os.environ.get("OTARITH_ENUM_CAP"):
        cap = int(os.environ["OTARITH_ENUM_CAP"])
    else:
        cap = doc.options.get("enum_cap", ideals.DEFAULT_ENUM_CAP)
    horizon = args.horizon or doc.options.get("horizon", 60)
    return max(bits, 32), cap, horizon


def run_command(cmd, doc, args):
    bits, cap, horizon = _resolve_options(doc, args)
    args.horizon = horizon
    ctx = Context(doc, bits, cap)
    result = HANDLERS[cmd](ctx, args)
    if isinstance(result, str):
        return result
    return {"tool": "otarith", "version": __version__, "command": cmd,
            "input": doc.to_json(), "result": result}


def _error(exc, code):
    name = exc.code if isinstance(exc, OtArithError) else type(exc).__name__
    return {"tool": "otarith", "version": __version__, "error": {"code": name, "message": str(exc)}}, code


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.command == "corpus":
        return _corpus(args)
    try:
        text = sys.stdin.read() if args.input == "-" else Path(args.input).read_text()
        doc = parse_input(text)
        out = run_command(args.command, doc, args)
        code = 0
        if isinstance(out, dict) and args.command == "verify" and not out["result"]["all_ok"]:
            code = 1
    except Refusal as exc:
        out, code = _error(exc, 2)
    except Exception as exc:  # noqa: BLE001 - every failure becomes a coded report
        out, code = _error(exc, 1)
    sys.stdout.write(out if isinstance(out, str) else dumps(out))
    return code


def _corpus(args):
    docs = corpus()
    if args.out:
        d = Path(args.out)
        d.mkdir(parents=True, exist_ok=True)
        for doc in docs:
            (d / f"{doc.name}.json").write_text(dumps(doc.to_json()))
    else:
        sys.stdout.write(dumps({"documents": [doc.name for doc in docs]}))
    return 0


if __name__ == "__main__":
    sys.exit(main())

"""Command line: run queries from JSON definition documents and export gallery instances.

Document layout (``"format": 1``)::

    spaces      name -> [[basis name, degree], ...]
    algebras    name -> {"space", "brackets": [[[inputs...], {output: coeff}], ...]}
    morphisms   name -> {"source", "target", "components": [[[word...], {output: coeff}], ...]}
    ruths       name -> {"algebra", "space", "differential": {col: {row: coeff}},
                         "components": [[[word...], {col: {row: coeff}}], ...]}
    extensions  name -> {"kernel", "total", "base", "iota": {col: {row: coeff}}, "pi": {...}}
    sections    name -> {"extension", "columns": {col: {row: coeff}}}
    queries     [{"command": ..., parameters...}, ...]

Brackets are graded skew-symmetric brackets; morphism components act on words of the
shifted source.  Coefficients are integers or "p/q" strings.
"""
from __future__ import annotations

import argparse
import json
import os
import random
import re
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .cochain import Cochain, ce_differential
from .cohomology import cohomology, theta_cocycle
from .cwl import (CertificateError, EquivariantHom, cwl_cocycle, equivariant_homs, identity_hom,
                  independence_certificate, make_hom, naturality_check)
from .extension import (LInftyExtension, Section, bianchi, check_extension, curvature, default_section,
                        induced_action, is_flat, random_section)
from .graded import GradedSpace, normalize, scalar
from .linfty import LInftyAlgebra, LInftyMorphism, check_jacobi, check_morphism, is_quasi_iso, minimal_model_2term
from .report import Report
from .ruth import Ruth, check_ruth, check_ruth_direct

FORMAT = 1
SECTIONS = ("spaces", "algebras", "morphisms", "ruths", "extensions", "sections", "queries")
COMMANDS = ("validate-algebra", "validate-ruth", "validate-extension", "cohomology", "curvature",
            "bianchi", "cwl", "minimal-model", "naturality")

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


# rationals -------------------------------------------------------------------

_RATIONAL = re.compile(r"^\s*-?\d+(\s*/\s*\d+)?\s*$")


def parse_rational(x, where: str = ""):
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise InputError(f"{where}: coefficient {x!r} must be an integer or a 'p/q' string")
    if isinstance(x, str):
        if not _RATIONAL.match(x):
            raise InputError(f"{where}: malformed rational {x!r}")
        try:
            return normalize(Fraction(x.replace(" ", "")))
        except ZeroDivisionError:
            raise InputError(f"{where}: zero denominator in {x!r}") from None
    return x


def format_rational(c):
    c = scalar(c)
    return c if isinstance(c, int) else f"{c.numerator}/{c.denominator}"


# document ---------------------------------------------------------------------

@dataclass
class DefinitionDocument:
    data: dict
    spaces: dict[str, GradedSpace] = field(default_factory=dict)
    algebras: dict[str, LInftyAlgebra] = field(default_factory=dict)
    morphisms: dict[str, LInftyMorphism] = field(default_factory=dict)
    ruths: dict[str, Ruth] = field(default_factory=dict)
    extensions: dict[str, LInftyExtension] = field(default_factory=dict)
    sections: dict[str, Section] = field(default_factory=dict)
    queries: list[dict] = field(default_factory=list)
    name: str = ""


def _locate(text: str, needle: str) -> str:
    if not text:
        return ""
    pos = text.find(json.dumps(needle))
    if pos < 0:
        return ""
    return f"line {text.count(chr(10), 0, pos) + 1}: "


def _vec(space: GradedSpace, table: Mapping, where: str) -> dict:
    if not isinstance(table, Mapping):
        raise InputError(f"{where}: expected an object of coefficients")
    out = {}
    for k, c in table.items():
        if k not in space.names:
            raise InputError(f"{where}: unknown basis element {k!r}")
        c = parse_rational(c, where)
        if c:
            out[space.index(k)] = c
    return out


def _matrix(src: GradedSpace, tgt: GradedSpace, table: Mapping, where: str) -> dict:
    if not isinstance(table, Mapping):
        raise InputError(f"{where}: expected an object of columns")
    out = {}
    for col, vec in table.items():
        if col not in src.names:
            raise InputError(f"{where}: unknown basis element {col!r}")
        v = _vec(tgt, vec, where)
        if v:
            out[src.index(col)] = v
    return out


def _word(space: GradedSpace, names, where: str) -> tuple[int, ...]:
    if not isinstance(names, list):
        raise InputError(f"{where}: a word must be a list of basis names")
    for n in names:
        if n not in space.names:
            raise InputError(f"{where}: unknown basis element {n!r}")
    return tuple(space.index(n) for n in names)


def _ref(table: Mapping, key, kind: str, where: str):
    if key not in table:
        raise InputError(f"{where}: unknown {kind} {key!r}")
    return table[key]


def build_document(data: dict, text: str = "") -> DefinitionDocument:
    if not isinstance(data, dict):
        raise InputError("document must be a JSON object")
    if data.get("format") != FORMAT:
        raise InputError(f"unsupported or missing format (expected {FORMAT})")
    unknown = set(data) - set(SECTIONS) - {"format", "name"}
    if unknown:
        raise InputError(f"unknown top-level keys: {sorted(unknown)}")
    doc = DefinitionDocument(data, name=data.get("name", ""))

    def at(name: str) -> str:
        return _locate(text, name)

    for name, basis in data.get("spaces", {}).items():
        where = f"{at(name)}space {name!r}"
        try:
            pairs = [(str(b), int(d)) for b, d in basis]
            doc.spaces[name] = GradedSpace.from_pairs(pairs)
        except (TypeError, ValueError) as exc:
            raise InputError(f"{where}: {exc}") from None
    for name, body in data.get("algebras", {}).items():
        where = f"{at(name)}algebra {name!r}"
        space = _ref(doc.spaces, body.get("space"), "space", where)
        table = {}
        for entry in body.get("brackets", []):
            inputs, out = entry
            w = tuple(space.names[i] for i in _word(space, inputs, where))
            table[w] = _vec(space, out, where)
        try:
            doc.algebras[name] = LInftyAlgebra.from_brackets(space, table, name)
        except ValueError as exc:
            raise InputError(f"{where}: {exc}") from None
    for name, body in data.get("morphisms", {}).items():
        where = f"{at(name)}morphism {name!r}"
        src = _ref(doc.algebras, body.get("source"), "algebra", where)
        tgt = _ref(doc.algebras, body.get("target"), "algebra", where)
        comps = {}
        for w, out in body.get("components", []):
            comps[_word(src.space, w, where)] = _vec(tgt.space, out, where)
        doc.morphisms[name] = LInftyMorphism(src, tgt, comps, name)
    for name, body in data.get("ruths", {}).items():
        where = f"{at(name)}ruth {name!r}"
        g = _ref(doc.algebras, body.get("algebra"), "algebra", where)
        V = _ref(doc.spaces, body.get("space"), "space", where)
        partial = _matrix(V, V, body.get("differential", {}), where)
        comps = {}
        for w, m in body.get("components", []):
            sign, cw = g.words.canonicalize(_word(g.space, w, where))
            if not sign:
                raise InputError(f"{where}: word {w} vanishes in the symmetric coalgebra")
            comps[cw] = {j: {i: sign * c for i, c in col.items()} for j, col in _matrix(V, V, m, where).items()}
        try:
            doc.ruths[name] = Ruth(g, V, partial, comps, name)
        except ValueError as exc:
            raise InputError(f"{where}: {exc}") from None
    for name, body in data.get("extensions", {}).items():
        where = f"{at(name)}extension {name!r}"
        n = _ref(doc.algebras, body.get("kernel"), "algebra", where)
        ghat = _ref(doc.algebras, body.get("total"), "algebra", where)
        g = _ref(doc.algebras, body.get("base"), "algebra", where)
        iota = LInftyMorphism.strict(n, ghat, _matrix(n.space, ghat.space, body.get("iota", {}), where), "iota")
        pi = LInftyMorphism.strict(ghat, g, _matrix(ghat.space, g.space, body.get("pi", {}), where), "pi")
        doc.extensions[name] = LInftyExtension(n, ghat, g, iota, pi, name)
    for name, body in data.get("sections", {}).items():
        where = f"{at(name)}section {name!r}"
        e = _ref(doc.extensions, body.get("extension"), "extension", where)
        try:
            doc.sections[name] = Section(e, _matrix(e.g.space, e.ghat.space, body.get("columns", {}), where), name)
        except ValueError as exc:
            raise InputError(f"{where}: {exc}") from None
    queries = data.get("queries", [])
    if not isinstance(queries, list):
        raise InputError("queries must be a list")
    for k, q in enumerate(queries):
        _check_query(doc, q, f"query {k}")
        doc.queries.append(q)
    return doc


_QUERY_REFS = {
    "algebra": "algebras", "ruth": "ruths", "extension": "extensions", "section": "sections",
    "morphism": "morphisms", "target_ruth": "ruths",
}


def _check_query(doc: DefinitionDocument, q, where: str) -> None:
    if not isinstance(q, dict) or "command" not in q:
        raise InputError(f"{where}: a query needs a 'command'")
    if q["command"] not in COMMANDS:
        raise InputError(f"{where}: unknown command {q['command']!r}")
    for key, table in _QUERY_REFS.items():
        if key in q:
            _ref(getattr(doc, table), q[key], key, where)
    for s in q.get("sections", []):
        _ref(doc.sections, s, "section", where)


def parse_text(text: str) -> DefinitionDocument:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return build_document(data, text)


def parse(path: str) -> DefinitionDocument:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(str(exc)) from None
    return parse_text(text)


# export ------------------------------------------------------------------------

def _vec_out(space: GradedSpace, vec: Mapping[int, object]) -> dict:
    return {space.names[i]: format_rational(vec[i]) for i in sorted(vec) if vec[i]}


def _matrix_out(src: GradedSpace, tgt: GradedSpace, m: Mapping[int, Mapping[int, object]]) -> dict:
    return {src.names[j]: _vec_out(tgt, m[j]) for j in sorted(m) if m[j]}


def _word_out(space: GradedSpace, w) -> list[str]:
    return [space.names[i] for i in w]


def _cochain_out(alpha: Cochain) -> list:
    names = alpha.algebra.space
    return [[_word_out(names, w), _vec_out(alpha.space, v)] for w, v in sorted(alpha.data.items()) if v]


def document_from_objects(name: str, algebras: Mapping[str, LInftyAlgebra], ruths: Mapping[str, Ruth] = {},
                          morphisms: Mapping[str, LInftyMorphism] = {},
                          extensions: Mapping[str, LInftyExtension] = {}, sections: Mapping[str, Section] = {},
                          queries: list | None = None) -> dict:
    spaces: dict[str, GradedSpace] = {}

    def space_name(space: GradedSpace, preferred: str) -> str:
        for k, v in spaces.items():
            if v == space:
                return k
        key = preferred
        n = 1
        while key in spaces:
            n += 1
            key = f"{preferred}{n}"
        spaces[key] = space
        return key

    def alg_name(g: LInftyAlgebra) -> str:
        for k, v in algebras.items():
            if v is g:
                return k
        raise ValueError(f"algebra {g.name} is not registered")

    alg_out = {}
    for k, g in algebras.items():
        br = g.brackets()
        alg_out[k] = {"space": space_name(g.space, k),
                      "brackets": [[_word_out(g.space, w), _vec_out(g.space, v)] for w, v in sorted(br.items()) if v]}
    mor_out = {}
    for k, F in morphisms.items():
        mor_out[k] = {"source": alg_name(F.source), "target": alg_name(F.target),
                      "components": [[_word_out(F.source.space, w), _vec_out(F.target.space, v)]
                                     for w, v in sorted(F.components.items()) if v]}
    ruth_out = {}
    for k, r in ruths.items():
        V = r.space
        ruth_out[k] = {"algebra": alg_name(r.algebra), "space": space_name(V, f"V[{k}]"),
                       "differential": _matrix_out(V, V, r.partial),
                       "components": [[_word_out(r.algebra.space, w), _matrix_out(V, V, m)]
                                      for w, m in sorted(r.components.items()) if m]}
    ext_out = {}
    for k, e in extensions.items():
        ext_out[k] = {"kernel": alg_name(e.n), "total": alg_name(e.ghat), "base": alg_name(e.g),
                      "iota": _matrix_out(e.n.space, e.ghat.space, dict(enumerate(e.iota_cols))),
                      "pi": _matrix_out(e.ghat.space, e.g.space, e.pi_cols)}
    sec_out = {}
    for k, h in sections.items():
        e = h.extension
        ename = next(n for n, v in extensions.items() if v is e)
        sec_out[k] = {"extension": ename, "columns": _matrix_out(e.g.space, e.ghat.space, h.cols)}
    return {
        "format": FORMAT,
        "name": name,
        "spaces": {k: [[n, d] for n, d in zip(v.names, v.degrees)] for k, v in spaces.items()},
        "algebras": alg_out,
        "morphisms": mor_out,
        "ruths": ruth_out,
        "extensions": ext_out,
        "sections": sec_out,
        "queries": list(queries or []),
    }


def dumps(data: dict) -> str:
    return json.dumps(data, indent=1, ensure_ascii=False) + "\n"


def export_document(doc: DefinitionDocument) -> str:
    return dumps(document_from_objects(doc.name, doc.algebras, doc.ruths, doc.morphisms, doc.extensions,
                                       doc.sections, doc.queries))


def default_queries(inst) -> list[dict]:
    """Validation of every object, then the computations the instance is meant to showcase."""
    qs: list[dict] = []
    for k in inst.algebras:
        qs.append({"command": "validate-algebra", "algebra": k})
    for k in inst.ruths:
        qs.append({"command": "validate-ruth", "ruth": k})
    for k in inst.extensions:
        qs.append({"command": "validate-extension", "extension": k})
    for k, r in inst.ruths.items():
        qs.append({"command": "cohomology", "ruth": k, "degrees": "0..3"})
    for k, h in inst.sections.items():
        ename = inst.extension_name(h.extension)
        qs.append({"command": "curvature", "extension": ename, "section": k})
        qs.append({"command": "bianchi", "extension": ename, "section": k})
    for ename, e in inst.extensions.items():
        coeff = f"{ename}.coeff"
        secs = [k for k, h in inst.sections.items() if h.extension is e]
        if coeff in inst.ruths and secs:
            qs.append({"command": "cwl", "extension": ename, "ruth": coeff, "k": 1, "degree": 0, "sections": secs})
    for k, g in inst.algebras.items():
        if set(g.space.degrees) <= {-1, 0} and -1 in g.space.degrees and all(len(w) <= 2 for w in g.lam) \
                and inst.crossed_module is not None:
            qs.append({"command": "minimal-model", "algebra": k})
    qs.extend(inst.queries)
    return qs


def export_gallery(name: str, path: str | None = None) -> str:
    from .gallery import build
    inst = build(name)
    data = document_from_objects(inst.name, inst.algebras, inst.ruths, inst.morphisms, inst.extensions,
                                 inst.sections, default_queries(inst))
    text = dumps(data)
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    return text


# queries -------------------------------------------------------------------------

@dataclass
class Options:
    max_weight: int | None = None
    degrees: tuple[int, int] = (0, 3)
    seed: int = 0


def parse_degrees(text: str) -> tuple[int, int]:
    m = re.match(r"^\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*$", str(text))
    if not m:
        raise InputError(f"degree range {text!r} must look like a..b")
    a, b = int(m.group(1)), int(m.group(2))
    if a > b:
        raise InputError(f"empty degree range {text!r}")
    return a, b


def _violations(rep: Report, limit: int = 10) -> list[str]:
    return [v.describe() for v in rep.violations[:limit]]


def _hom_from(q: dict, e: LInftyExtension, r: Ruth) -> EquivariantHom:
    body = q["f"]
    k = int(body.get("k", 1))
    deg = int(body.get("degree", 0))
    from .graded import tensor_power_space
    src = tensor_power_space(e.kernel_space, k)
    return make_hom(e.kernel_space, k, r.space, deg, _matrix(src, r.space, body.get("matrix", {}), "f"))


def _q_validate_algebra(doc, q, opt):
    g = doc.algebras[q["algebra"]]
    rep = check_jacobi(g, opt.max_weight)
    return rep.ok, {"checked": rep.checked, "dim": g.dim}, {}, _violations(rep)


def _q_validate_ruth(doc, q, opt):
    r = doc.ruths[q["ruth"]]
    mc = check_ruth(r, opt.max_weight)
    direct = check_ruth_direct(r, opt.max_weight)
    agree = mc.ok == direct.ok
    res = {"maurer_cartan": mc.ok, "direct": direct.ok, "agree": agree}
    return mc.ok and direct.ok, res, {}, _violations(mc) + _violations(direct)


def _q_validate_extension(doc, q, opt):
    rep = check_extension(doc.extensions[q["extension"]])
    return rep.ok, {"checked": rep.checked}, {}, _violations(rep)


def _q_cohomology(doc, q, opt):
    r = doc.ruths[q["ruth"]]
    a, b = parse_degrees(q["degrees"]) if "degrees" in q else opt.degrees
    dims = {str(p): cohomology(r, p).dim for p in range(a, b + 1)}
    cdims = {str(p): cohomology(r, p).cochain_dim for p in range(a, b + 1)}
    return True, {"dimensions": dims, "cochain_dimensions": cdims}, {}, []


def _q_curvature(doc, q, opt):
    e = doc.extensions[q["extension"]]
    h = doc.sections[q["section"]]
    K = curvature(e, h)
    return True, {"flat": is_flat(e, h), "curvature": _cochain_out(K)}, {}, []


def _q_bianchi(doc, q, opt):
    e = doc.extensions[q["extension"]]
    h = doc.sections[q["section"]]
    B = bianchi(e, h)
    return B.is_zero(), {"bianchi_zero": B.is_zero()}, {}, [] if B.is_zero() else [f"D K = {_cochain_out(B)}"]


def _q_cwl(doc, q, opt):
    e = doc.extensions[q["extension"]]
    r = doc.ruths[q["ruth"]]
    k = int(q.get("k", 1))
    deg = int(q.get("degree", 0))
    secs = [doc.sections[s] for s in q.get("sections", [])]
    if not secs:
        secs = [default_section(e)]
    rng = random.Random(opt.seed)
    other = random_section(e, rng, name=f"random[{opt.seed}]")
    if "f" in q:
        homs = [_hom_from(q, e, r)]
    else:
        homs = equivariant_homs(e, r, k, deg, strong=True, section=secs[0])
    out = []
    certs = {}
    ok = True
    for n, f in enumerate(homs):
        z = cwl_cocycle(f, e, secs[0], r)
        grp = cohomology(r, z.degree)
        closed = ce_differential(r, z).is_zero()
        coords = [format_rational(c) for c in grp.coordinates(z)] if closed else None
        entry = {"f": n, "cochain_degree": z.degree, "closed": closed, "H_dim": grp.dim, "coordinates": coords,
                 "certificates": []}
        ok &= closed
        for h1 in secs[1:] + [other]:
            try:
                beta = independence_certificate(f, e, r, secs[0], h1)
                entry["certificates"].append(h1.name)
                certs[f"f{n}:{secs[0].name}->{h1.name}"] = _cochain_out(beta)
            except CertificateError:
                ok = False
                entry["certificates"].append(f"{h1.name}: none")
        out.append(entry)
    return ok, {"basis_size": len(homs), "classes": out}, certs, []


def _q_minimal_model(doc, q, opt):
    g = doc.algebras[q["algebra"]]
    mm = minimal_model_2term(g)
    mor = check_morphism(mm.morphism, opt.max_weight)
    qi = is_quasi_iso(mm.morphism)
    r, theta = theta_cocycle(mm)
    closed = ce_differential(r, theta).is_zero()
    grp = cohomology(r, 3)
    coords = [format_rational(c) for c in grp.coordinates(theta)] if closed else None
    M = mm.algebra
    res = {"kernel_dim": mm.n_kernel, "cokernel_dim": M.dim - mm.n_kernel, "morphism": mor.ok,
           "quasi_iso": qi.is_quasi_iso, "theta_closed": closed, "H3_dim": grp.dim, "theta_class": coords,
           "theta": _cochain_out(theta)}
    return mor.ok and qi.is_quasi_iso and closed, res, {}, _violations(mor)


def _q_naturality(doc, q, opt):
    T = doc.morphisms[q["morphism"]]
    e = doc.extensions[q["extension"]]
    r = doc.ruths[q["ruth"]]
    t = q.get("t")
    V = r.space
    tm = _matrix(V, V, t, "t") if t is not None else {i: {i: 1} for i in range(V.dim)}
    f = _hom_from(q, e, r) if "f" in q else identity_hom(e)
    res = naturality_check(T, tm, e, r, f, doc.ruths.get(q.get("target_ruth")))
    certs = {"primitive": _cochain_out(res.certificate)} if res.certificate is not None else {}
    return res.commutes, {"commutes": res.commutes, "cochain_level_equal": res.cochain_equal}, certs, []


HANDLERS = {
    "validate-algebra": _q_validate_algebra, "validate-ruth": _q_validate_ruth,
    "validate-extension": _q_validate_extension, "cohomology": _q_cohomology, "curvature": _q_curvature,
    "bianchi": _q_bianchi, "cwl": _q_cwl, "minimal-model": _q_minimal_model, "naturality": _q_naturality,
}


def run_query(doc: DefinitionDocument, index: int, q: dict, opt: Options) -> dict:
    entry = {"index": index, "command": q["command"]}
    params = {k: v for k, v in q.items() if k != "command"}
    if params:
        entry["params"] = params
    try:
        ok, results, certs, violations = HANDLERS[q["command"]](doc, q, opt)
        entry["status"] = "pass" if ok else "fail"
        entry["results"] = results
        if certs:
            entry["certificates"] = certs
        if violations:
            entry["violations"] = violations
    except (InputError, ValueError, KeyError, AssertionError) as exc:
        entry["status"] = "error"
        entry["error"] = f"{type(exc).__name__}: {exc}"
    return entry


def run(doc: DefinitionDocument, opt: Options | None = None) -> dict:
    opt = opt or Options()
    threads = max(1, int(os.environ.get("LINFTY_CWL_THREADS", "1") or 1))
    jobs = list(enumerate(doc.queries))
    if threads > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda iq: run_query(doc, iq[0], iq[1], opt), jobs))
    else:
        results = [run_query(doc, i, q, opt) for i, q in jobs]
    status = "pass"
    if any(r["status"] != "pass" for r in results):
        status = "fail"
    return {"format": FORMAT, "document": doc.name, "status": status, "queries": results}


def exit_code(report: dict) -> int:
    if any(r["status"] == "error" for r in report["queries"]):
        return EXIT_INPUT
    return EXIT_OK if report["status"] == "pass" else EXIT_FAIL


def _short(value) -> str:
    return json.dumps(value, ensure_ascii=False, separators=(",", ":"))


def render_text(report: dict) -> str:
    lines = [f"document {report['document'] or '(unnamed)'}: {report['status']}"]
    for r in report["queries"]:
        params = " ".join(f"{k}={_short(v)}" for k, v in r.get("params", {}).items())
        lines.append(f"[{r['index']}] {r['command']} {params}".rstrip() + f": {r['status']}")
        if "error" in r:
            lines.append(f"    error: {r['error']}")
        for k, v in r.get("results", {}).items():
            lines.append(f"    {k}: {_short(v)}")
        for k, v in r.get("certificates", {}).items():
            lines.append(f"    certificate {k}: {_short(v)}")
        for v in r.get("violations", []):
            lines.append(f"    violation {v}")
    return "\n".join(lines) + "\n"


def render_json(report: dict) -> str:
    return json.dumps(report, indent=1, ensure_ascii=False) + "\n"


# entry point -----------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="linfty-cwl", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="cmd", required=True)
    r = sub.add_parser("run", help="run the queries of a definition document")
    r.add_argument("file")
    r.add_argument("--json", action="store_true", help="machine-readable report")
    r.add_argument("--max-weight", type=int, default=None, help="cap on word weights in validators")
    r.add_argument("--degrees", default=None, help="default degree range a..b for cohomology queries")
    r.add_argument("--seed", type=int, default=0, help="seed for the extra random section in cwl queries")
    e = sub.add_parser("export", help="write a gallery instance as a definition document")
    e.add_argument("name")
    e.add_argument("path", nargs="?", default="-")
    sub.add_parser("list", help="list gallery instances")
    return p


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    if args.cmd == "list":
        from .gallery import GALLERY
        for k in GALLERY:
            print(k)
        return EXIT_OK
    if args.cmd == "export":
        try:
            text = export_gallery(args.name, None if args.path == "-" else args.path)
        except KeyError as exc:
            print(f"error: {exc.args[0]}", file=sys.stderr)
            return EXIT_INPUT
        if args.path == "-":
            sys.stdout.write(text)
        return EXIT_OK
    try:
        doc = parse(args.file)
        opt = Options(args.max_weight, parse_degrees(args.degrees) if args.degrees else (0, 3), args.seed)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    report = run(doc, opt)
    sys.stdout.write(render_json(report) if args.json else render_text(report))
    return exit_code(report)


if __name__ == "__main__":
    sys.exit(main())

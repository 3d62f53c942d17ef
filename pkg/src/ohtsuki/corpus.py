"""Shipped diagrams and surgery presentations with stored expected values.

Each manifest entry records where its expected values come from:
``published`` (a value quoted in the literature), ``definition`` (forced
by the definitions), or ``computed`` (produced by an independent route in
this package, e.g. the 2^c state sum or the skein-tree Conway polynomial,
and kept as a regression value).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .linkdiag import LinkDiagram, SurgeryPresentation, disjoint_union, from_braid, kirby_knot_surgery, parse_pd, unknot, unlink
from .poly import format_rational, parse_rational

__all__ = ["Fixture", "corpus", "fixture_dir", "load_fixture", "resolve_path", "SOURCES", "build_fixture_files"]

SOURCES = ("published", "definition", "computed")

# name -> (kind, braid word, strands, framings, description)
_BRAIDS = {
    "trefoil_right": ("knot", [1, 1, 1], 2, None, "right-handed trefoil, closure of s1^3"),
    "trefoil_right_b3": ("knot", [1, 2, 1, 2], 3, None, "right-handed trefoil, closure of (s1 s2)^2"),
    "trefoil_right_kinked": ("knot", [1, 1, 1, 2], 3, None, "right-handed trefoil with a stabilization kink"),
    "trefoil_left": ("knot", [-1, -1, -1], 2, None, "left-handed trefoil"),
    "figure_eight": ("knot", [1, -2, 1, -2], 3, None, "figure-eight knot"),
    "knot_5_1": ("knot", [1] * 5, 2, None, "(2,5) torus knot"),
    "knot_5_2": ("knot", [1, 1, 1, 2, -1, 2], 3, None, "three-twist knot (Conway 1+2z^2)"),
    "knot_6_1": ("knot", [1, 1, 2, -1, -3, 2, -3], 4, None, "stevedore knot (Conway 1-2z^2)"),
    "knot_6_2": ("knot", [1, 1, 1, -2, 1, -2], 3, None, "6_2 (Conway 1-z^2-z^4)"),
    "knot_6_3": ("knot", [1, 1, -2, 1, -2, -2], 3, None, "6_3 (Conway 1+z^2+z^4)"),
    "knot_7_1": ("knot", [1] * 7, 2, None, "(2,7) torus knot"),
    "knot_8_19": ("knot", [1, 1, 1, 2, 1, 1, 1, 2], 3, None, "(3,4) torus knot"),
    "knot_8_20": ("knot", [1, 1, 1, -2, -1, -1, -1, -2], 3, None, "8_20 (Conway 1+2z^2+z^4)"),
    "unknot_kinked": ("knot", [1], 2, None, "unknot drawn with one kink"),
    "hopf_positive": ("link", [1, 1], 2, None, "positive Hopf link (linking number 1, not an ASL)"),
    "whitehead": ("link", [1, 1, -2, 1, -2], 3, None, "Whitehead link"),
    "borromean": ("link", [1, -2] * 3, 3, None, "Borromean rings"),
    "asl7_a": ("link", [1, 1, 1, -2, 1, 1, -2], 3, None, "7-crossing 2-component ASL (Conway -z^5-2z^3)"),
    "asl7_b": ("link", [1, 1, -2, 1, -2, 1, -2], 3, None, "7-crossing 2-component ASL (Conway z^5+z^3)"),
}

# name -> (base diagram name, framings, description, crossing budget for lambda_2 or None)
_PRESENTATIONS = {
    "trefoil_plus1": ("trefoil_right", [1], "+1 surgery on the right trefoil (Poincare sphere)", None),
    "trefoil_minus1": ("trefoil_right", [-1], "-1 surgery on the right trefoil", None),
    "trefoil_left_plus1": ("trefoil_left", [1], "+1 surgery on the left trefoil", None),
    "trefoil_kinked_plus1": ("trefoil_right_kinked", [1], "+1 surgery on a kinked right trefoil diagram", None),
    "trefoil_b3_plus1": ("trefoil_right_b3", [1], "+1 surgery on the 3-braid right trefoil diagram", None),
    "figure_eight_plus1": ("figure_eight", [1], "+1 surgery on the figure-eight knot", None),
    "knot_5_2_minus1": ("knot_5_2", [-1], "-1 surgery on the three-twist knot", None),
    "whitehead_pm": ("whitehead", [1, -1], "Whitehead link framed (+1, -1)", None),
    "borromean_ppp": ("borromean", [1, 1, 1], "Borromean rings framed (+1, +1, +1)", None),
    "borromean_pmp": ("borromean", [1, -1, 1], "Borromean rings framed (+1, -1, +1)", None),
    "asl7_a_pp": ("asl7_a", [1, 1], "7-crossing ASL framed (+1, +1)", None),
    "unknot_plus1": ("unknot", [1], "+1 surgery on the unknot (S^3)", None),
}

_PUBLISHED = {
    "trefoil_plus1": {"lambda2": 39},
    "trefoil_left_plus1": {"lambda2": 63},
    "trefoil_kinked_plus1": {"lambda2": 39},
    "trefoil_b3_plus1": {"lambda2": 39},
}


@dataclass
class Fixture:
    name: str
    kind: str
    path: Path | None
    description: str = ""
    expected: dict = field(default_factory=dict)
    budget: int | None = None

    def diagram(self) -> LinkDiagram:
        if self.path is None:
            raise FileNotFoundError(f"fixture {self.name} ships no diagram")
        return parse_pd(self.path.read_text().strip())

    def presentation(self) -> SurgeryPresentation:
        return SurgeryPresentation(self.diagram(), self.name)

    def value(self, key: str):
        entry = self.expected[key]
        v = entry["value"]
        return parse_rational(v) if isinstance(v, str) and key.startswith(("lambda", "v", "phi")) else v


def fixture_dir() -> Path:
    return Path(str(resources.files("ohtsuki") / "fixtures"))


def corpus() -> dict[str, Fixture]:
    base = fixture_dir()
    manifest = json.loads((base / "manifest.json").read_text())
    out = {}
    for entry in manifest["fixtures"]:
        path = base / entry["file"] if entry.get("file") else None
        out[entry["name"]] = Fixture(entry["name"], entry["kind"], path,
                                     entry.get("description", ""), entry.get("expected", {}),
                                     entry.get("budget"))
    return out


def load_fixture(name: str) -> Fixture:
    return corpus()[name]


def resolve_path(path: str) -> Path:
    """A PD file path, falling back to the shipped fixtures by file name."""
    p = Path(path)
    if p.exists():
        return p
    cand = fixture_dir() / p.name
    if cand.exists():
        return cand
    if not p.suffix:
        cand = fixture_dir() / (p.name + ".pd")
        if cand.exists():
            return cand
    raise FileNotFoundError(path)


# ---------------------------------------------------------------------------
# generation of the shipped files


def _base_diagrams() -> dict[str, tuple[str, LinkDiagram, str]]:
    out = {"unknot": ("knot", unknot(), "crossingless unknot"),
           "unlink2": ("link", unlink(2), "2-component unlink"),
           "unlink3": ("link", unlink(3), "3-component unlink")}
    for name, (kind, word, strands, fr, desc) in _BRAIDS.items():
        out[name] = (kind, from_braid(word, strands, fr), desc)
    out["trefoil_split_figure_eight"] = (
        "link", disjoint_union(out["trefoil_right"][1], out["figure_eight"][1]),
        "split union of the right trefoil and the figure-eight")
    return out


def _entry(value, source):
    if isinstance(value, Fraction):
        value = format_rational(value)
    return {"value": value, "source": source}


def build_fixture_files(target: Path | None = None) -> Path:
    """Regenerate the PD files and the manifest (used when extending the corpus)."""
    from .jones import _negate_z, conway_skein, jones_states
    from .lambdas import lambda1, lambda2
    from .linkdiag import linking_matrix
    from .linkinv import phi_series, v_i

    target = Path(target) if target else fixture_dir()
    target.mkdir(parents=True, exist_ok=True)
    entries = []
    diagrams = _base_diagrams()
    for name, (kind, D, desc) in diagrams.items():
        (target / f"{name}.pd").write_text(D.to_pd() + "\n")
        exp = {}
        if D.num_components and len(D.crossings) <= 12:
            exp["jones_std"] = _entry(jones_states(D).to_json(), "computed")
        exp["conway"] = _entry(_negate_z(conway_skein(D)).to_json(), "computed")
        exp["linking_matrix"] = _entry(linking_matrix(D), "definition")
        if kind == "knot":
            for i in (2, 3, 4):
                exp[f"v{i}"] = _entry(v_i(D, i), "computed")
        entries.append({"name": name, "kind": kind, "file": f"{name}.pd", "description": desc, "expected": exp})
    for name, (base, fr, desc, budget) in _PRESENTATIONS.items():
        D = diagrams[base][1].with_framings(fr)
        (target / f"{name}.pd").write_text(D.to_pd() + "\n")
        P = SurgeryPresentation(D, name)
        exp = {"lambda1": _entry(lambda1(P), "computed"),
               "lambda2": _entry(lambda2(P, max_crossings=budget), "computed")}
        for k, v in _PUBLISHED.get(name, {}).items():
            exp[k] = _entry(Fraction(v), "published")
        if base == "unknot":
            exp = {k: _entry(Fraction(0), "definition") for k in ("lambda1", "lambda2")}
        entry = {"name": name, "kind": "presentation", "file": f"{name}.pd", "description": desc, "expected": exp}
        if budget:
            entry["budget"] = budget
        entries.append(entry)
    half = kirby_knot_surgery(diagrams["trefoil_right"][1], 2)
    (target / "trefoil_half.pd").write_text(half.diagram.to_pd() + "\n")
    entries.append({"name": "trefoil_half", "kind": "presentation", "file": "trefoil_half.pd",
                    "description": "1/2 surgery on the right trefoil as +1-framed 0-parallel", "budget": 100,
                    "expected": {"lambda1": _entry(lambda1(half), "computed"),
                                 "lambda2": _entry(lambda2(half, max_crossings=100), "computed")}})
    entries.append({"name": "brieskorn_2_5_7", "kind": "optional", "file": None,
                    "description": "Sigma(2,5,7); no surgery diagram is shipped",
                    "expected": {"lambda2": _entry("-66", "published")}})
    doc = {"schema": 1, "fixtures": entries}
    (target / "manifest.json").write_text(json.dumps(doc, indent=1, sort_keys=False) + "\n")
    return target

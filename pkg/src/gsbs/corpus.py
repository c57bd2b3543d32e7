"""Frozen regression corpus: derived quantities with provenance notes.

Each case pins, for one (n, c): the torsion base m, the torsion order m^c,
the witness matrix, finiteness of its twisted class count, and the class
count itself. Counts are produced by the box oracle at regeneration time;
a corpus run recomputes everything through the primary code paths and
compares. Every stored value carries a note saying where it came from.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Sequence

from .errors import SchemaError
from .groups import make_params, torsion_info
from .intlin import IntMatrix, matrix_from_json, matrix_to_json
from .jsonutil import decode_int, encode_int, require_key
from .twisted import reidemeister_exact, reidemeister_finite, reidemeister_oracle
from .witness import build_witness_matrix, witness_automorphism

DEFAULT_CASES: tuple[tuple[int, int], ...] = (
    (15, 1),
    (15, 2),
    (21, 1),
    (21, 2),
    (35, 1),
    (35, 2),
    (65, 1),
    (6, 1),
    (6, 2),
)


@dataclass(frozen=True)
class CorpusCase:
    n: int
    c: int
    m: int
    m_note: str
    torsion_order: int
    torsion_note: str
    witness_matrix: IntMatrix
    witness_note: str
    finite: bool
    finite_note: str
    count: int
    count_note: str

    def to_json(self) -> dict[str, Any]:
        return {
            "n": encode_int(self.n),
            "c": self.c,
            "m": {"value": encode_int(self.m), "note": self.m_note},
            "torsion_order": {
                "value": encode_int(self.torsion_order),
                "note": self.torsion_note,
            },
            "witness_matrix": {
                "value": matrix_to_json(self.witness_matrix),
                "note": self.witness_note,
            },
            "finite": {"value": self.finite, "note": self.finite_note},
            "count": {"value": encode_int(self.count), "note": self.count_note},
        }


def case_from_json(doc: Any) -> CorpusCase:
    def noted(key: str) -> tuple[Any, str]:
        entry = require_key(doc, key, "corpus case")
        value = require_key(entry, "value", f"corpus case {key}")
        note = require_key(entry, "note", f"corpus case {key}")
        if not isinstance(note, str):
            raise SchemaError(f"corpus case {key}: note must be a string")
        return value, note

    n = decode_int(require_key(doc, "n", "corpus case"), "corpus case n")
    c = decode_int(require_key(doc, "c", "corpus case"), "corpus case c")
    m_v, m_note = noted("m")
    t_v, t_note = noted("torsion_order")
    w_v, w_note = noted("witness_matrix")
    f_v, f_note = noted("finite")
    cnt_v, cnt_note = noted("count")
    if not isinstance(f_v, bool):
        raise SchemaError("corpus case finite: value must be boolean")
    return CorpusCase(
        n=n,
        c=c,
        m=decode_int(m_v, "corpus case m"),
        m_note=m_note,
        torsion_order=decode_int(t_v, "corpus case torsion_order"),
        torsion_note=t_note,
        witness_matrix=matrix_from_json(w_v, "corpus case witness_matrix"),
        witness_note=w_note,
        finite=f_v,
        finite_note=f_note,
        count=decode_int(cnt_v, "corpus case count"),
        count_note=cnt_note,
    )


def corpus_to_json(cases: Sequence[CorpusCase]) -> dict[str, Any]:
    return {"cases": [case.to_json() for case in cases]}


def corpus_from_json(doc: Any) -> list[CorpusCase]:
    cases_doc = require_key(doc, "cases", "corpus")
    if not isinstance(cases_doc, list):
        raise SchemaError("corpus.cases: expected array")
    return [case_from_json(item) for item in cases_doc]


def regenerate(
    pairs: Sequence[tuple[int, int]] = DEFAULT_CASES,
    *,
    element_box: int = 4,
    conjugator_box: int = 8,
) -> list[CorpusCase]:
    """Recompute every corpus value; class counts come from the box oracle."""
    cases = []
    for n, c in pairs:
        params = make_params(n, c)
        cert = build_witness_matrix(params)
        phi = witness_automorphism(params)
        finite = reidemeister_finite(params, phi)
        record = reidemeister_oracle(
            params, phi, element_box=element_box, conjugator_box=conjugator_box
        )
        assert record.stable and record.count is not None
        cases.append(
            CorpusCase(
                n=n,
                c=c,
                m=params.m,
                m_note="closed form: gcd of p_i^{y_i} - 1 over the factorization",
                torsion_order=torsion_info(params).order,
                torsion_note="closed form: m^c",
                witness_matrix=cert.M,
                witness_note=f"shear family q*N_r(q) + Id with q = m^(c-1) = {cert.q}",
                finite=finite,
                finite_note=f"det(M - Id) = {cert.det_M_minus_I} is nonzero",
                count=record.count,
                count_note=(
                    f"box oracle, element box {record.element_box}, stabilized at "
                    f"conjugator radius {record.conjugator_box}"
                ),
            )
        )
    return cases


@dataclass(frozen=True)
class CaseResult:
    n: int
    c: int
    ok: bool
    mismatches: tuple[str, ...]


def run(cases: Sequence[CorpusCase]) -> list[CaseResult]:
    """Recompute each stored value through the primary paths and compare.

    The stored count has oracle provenance; the recomputation uses the exact
    canonical-form counter, so a pass here is a genuine cross-check of the
    two independent routes.
    """
    results = []
    for case in cases:
        mismatches = []
        params = make_params(case.n, case.c)
        if params.m != case.m:
            mismatches.append(f"m: computed {params.m}, stored {case.m}")
        order = torsion_info(params).order
        if order != case.torsion_order:
            mismatches.append(f"torsion_order: computed {order}, stored {case.torsion_order}")
        cert = build_witness_matrix(params)
        if cert.M != case.witness_matrix:
            mismatches.append("witness_matrix: family output changed")
        phi = witness_automorphism(params)
        finite = reidemeister_finite(params, phi)
        if finite != case.finite:
            mismatches.append(f"finite: computed {finite}, stored {case.finite}")
        report = reidemeister_exact(params, phi, validate_input=False)
        if report.count != case.count:
            mismatches.append(f"count: exact {report.count}, stored oracle {case.count}")
        results.append(CaseResult(case.n, case.c, not mismatches, tuple(mismatches)))
    return results

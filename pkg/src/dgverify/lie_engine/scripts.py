"""Membership scripts: replayable evidence that a field lies in the Lie
algebra generated by complete fields.

A script is an ordered list of steps.  Each step declares a field as a
certified-complete leaf, as the bracket of two earlier steps, or as a
rational-linear combination of earlier steps, together with the claimed
resulting field.  The verifier recomputes every step from scratch and
compares with the claim, so a script is sound evidence regardless of how
it was produced.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Optional

from ..derivation import Derivation, bracket, format_field, parse_field
from ..polyring import SurfaceParameters, format_polynomial, parse_polynomial
from .certificates import (
    CertKind,
    CompletenessCertificate,
    verify_completeness,
)


class StepKind(str, Enum):
    LEAF = "leaf"
    BRACKET = "bracket"
    LINCOMB = "lincomb"


@dataclass(frozen=True)
class ScriptStep:
    kind: StepKind
    field: Derivation
    refs: tuple[int, ...] = ()
    scalars: tuple[Fraction, ...] = ()
    certificate: Optional[CompletenessCertificate] = None
    label: str = ""


@dataclass
class MembershipScript:
    params: SurfaceParameters
    steps: list[ScriptStep] = field(default_factory=list)

    @property
    def target(self) -> Derivation:
        return self.steps[-1].field


@dataclass(frozen=True)
class ScriptCheck:
    ok: bool
    failed_step: Optional[int] = None
    message: str = ""
    difference: Optional[Derivation] = None


def verify_script(s: MembershipScript) -> ScriptCheck:
    """Replay a script; reports the first failing step and the symbolic
    difference between the claim and the recomputed field."""
    if not s.steps:
        return ScriptCheck(False, None, "empty script")
    for i, step in enumerate(s.steps):
        if any(r < 0 or r >= i for r in step.refs):
            return ScriptCheck(False, i, f"step {i} references a non-earlier step")
        if step.kind is StepKind.LEAF:
            if step.certificate is None:
                return ScriptCheck(False, i, f"leaf step {i} has no certificate")
            if step.certificate.field != step.field:
                return ScriptCheck(
                    False,
                    i,
                    f"leaf step {i}: certificate is for a different field",
                    step.field - step.certificate.field,
                )
            if not verify_completeness(step.certificate):
                return ScriptCheck(False, i, f"leaf step {i}: certificate fails")
            continue
        if step.kind is StepKind.BRACKET:
            if len(step.refs) != 2:
                return ScriptCheck(False, i, f"bracket step {i} needs two refs")
            got = bracket(s.steps[step.refs[0]].field, s.steps[step.refs[1]].field)
        else:
            if len(step.refs) != len(step.scalars) or not step.refs:
                return ScriptCheck(False, i, f"lincomb step {i}: refs/scalars mismatch")
            got = Derivation.zero(s.params)
            for r, c in zip(step.refs, step.scalars):
                got = got + s.steps[r].field.scale(c)
        if got != step.field:
            return ScriptCheck(
                False,
                i,
                f"step {i} ({step.label or step.kind.value}): claim differs from "
                "recomputed field",
                step.field - got,
            )
    return ScriptCheck(True)


# -- JSON serialization -----------------------------------------------------


def _cert_to_dict(c: CompletenessCertificate) -> dict:
    out: dict = {"kind": c.kind.value, "field": format_field(c.field)}
    if c.bounds is not None:
        out["bounds"] = list(c.bounds)
    if c.factor is not None:
        out["factor"] = format_polynomial(c.factor)
    if c.base is not None:
        out["base"] = _cert_to_dict(c.base)
    if c.automorphism is not None:
        out["automorphism"] = {
            "images": [format_polynomial(p) for p in c.automorphism.images],
            "inverse_images": [
                format_polynomial(p) for p in c.automorphism.inverse_images
            ],
        }
    return out


def _cert_from_dict(data: dict, params: SurfaceParameters) -> CompletenessCertificate:
    from ..derivation import RingAutomorphism

    auto = None
    if "automorphism" in data:
        auto = RingAutomorphism(
            tuple(parse_polynomial(t) for t in data["automorphism"]["images"]),
            tuple(parse_polynomial(t) for t in data["automorphism"]["inverse_images"]),
            params,
        )
    return CompletenessCertificate(
        kind=CertKind(data["kind"]),
        field=parse_field(data["field"], params),
        bounds=tuple(data["bounds"]) if "bounds" in data else None,
        factor=parse_polynomial(data["factor"]) if "factor" in data else None,
        base=_cert_from_dict(data["base"], params) if "base" in data else None,
        automorphism=auto,
    )


def script_to_dict(s: MembershipScript) -> dict:
    steps = []
    for i, step in enumerate(s.steps):
        entry: dict = {
            "id": i,
            "kind": step.kind.value,
            "refs": list(step.refs),
            "scalars": [str(c) for c in step.scalars],
            "claimed_field": format_field(step.field),
        }
        if step.label:
            entry["label"] = step.label
        if step.certificate is not None:
            entry["certificate"] = _cert_to_dict(step.certificate)
        steps.append(entry)
    return {"n": s.params.n, "steps": steps}


def script_from_dict(data: dict) -> MembershipScript:
    params = SurfaceParameters(int(data["n"]))
    steps = []
    for entry in data["steps"]:
        steps.append(
            ScriptStep(
                kind=StepKind(entry["kind"]),
                field=parse_field(entry["claimed_field"], params),
                refs=tuple(entry.get("refs", ())),
                scalars=tuple(Fraction(c) for c in entry.get("scalars", ())),
                certificate=(
                    _cert_from_dict(entry["certificate"], params)
                    if "certificate" in entry
                    else None
                ),
                label=entry.get("label", ""),
            )
        )
    return MembershipScript(params, steps)


def script_to_json(s: MembershipScript, indent: int | None = None) -> str:
    return json.dumps(script_to_dict(s), indent=indent, sort_keys=True)


def script_from_json(text: str) -> MembershipScript:
    return script_from_dict(json.loads(text))

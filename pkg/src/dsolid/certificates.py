"""Claim trees and their deterministic JSON serialization.

Schema (format tag ``dsolid-certificate/1``): a theorem certificate holds a
model digest, preliminary claim trees, one case certificate per orbit size,
the axiom usage summary and the overall verdict.  Claim nodes carry the
stable field names ``claim_id``, ``statement``, ``method``, ``axiom_id``,
``inputs_digest``, ``result``, ``children`` plus ``ok``, ``operation`` and
``arguments`` for re-execution.  Serialization sorts keys, keeps lists in
construction order and contains nothing run-dependent, so equal inputs give
byte-identical output.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

from .axioms import AXIOM_CATALOG, validate_axiom_ids
from .errors import CertificateError

FORMAT_TAG = "dsolid-certificate/1"

METHODS = ("computation", "combinatorial", "axiom")


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def digest_inputs(operation: str, arguments) -> str:
    return hashlib.sha256(
        canonical_json({"operation": operation, "arguments": arguments}).encode("utf-8")
    ).hexdigest()


@dataclass
class ClaimNode:
    claim_id: str
    statement: str
    method: str
    ok: bool = True
    operation: str | None = None
    arguments: list | None = None
    inputs_digest: str | None = None
    result: object | None = None
    axiom_id: str | None = None
    children: list["ClaimNode"] = field(default_factory=list)

    def leaves(self):
        if not self.children:
            yield self
        for child in self.children:
            yield from child.leaves()

    def walk(self):
        yield self
        for child in self.children:
            yield from child.walk()

    def axioms_used(self) -> set[str]:
        return {node.axiom_id for node in self.walk() if node.method == "axiom" and node.axiom_id}

    def failed_claims(self) -> list[str]:
        return [node.claim_id for node in self.walk() if not node.ok]

    def to_json(self) -> dict:
        return {
            "claim_id": self.claim_id,
            "statement": self.statement,
            "method": self.method,
            "ok": self.ok,
            "operation": self.operation,
            "arguments": self.arguments,
            "inputs_digest": self.inputs_digest,
            "result": self.result,
            "axiom_id": self.axiom_id,
            "children": [child.to_json() for child in self.children],
        }

    @classmethod
    def from_json(cls, data: dict) -> "ClaimNode":
        try:
            return cls(
                claim_id=data["claim_id"],
                statement=data["statement"],
                method=data["method"],
                ok=data["ok"],
                operation=data.get("operation"),
                arguments=data.get("arguments"),
                inputs_digest=data.get("inputs_digest"),
                result=data.get("result"),
                axiom_id=data.get("axiom_id"),
                children=[cls.from_json(c) for c in data.get("children", [])],
            )
        except KeyError as missing:
            raise CertificateError(f"claim node missing field {missing}") from None


@dataclass
class CaseCertificate:
    m: int
    verdict: str  # Excluded | Failed
    root: ClaimNode

    def axioms_used(self) -> tuple[str, ...]:
        return tuple(sorted(self.root.axioms_used()))

    def failed_claims(self) -> tuple[str, ...]:
        return tuple(self.root.failed_claims())

    def leaf_count(self) -> int:
        return sum(1 for _ in self.root.leaves())

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "verdict": self.verdict,
            "axioms_used": list(self.axioms_used()),
            "failed_claims": list(self.failed_claims()),
            "root": self.root.to_json(),
        }

    @classmethod
    def from_json(cls, data: dict) -> "CaseCertificate":
        return cls(m=data["m"], verdict=data["verdict"], root=ClaimNode.from_json(data["root"]))


@dataclass
class TheoremCertificate:
    model_digest: str
    group_order: int
    tangent_dimension: int
    orbit_sizes: tuple[int, ...]
    preliminaries: list[ClaimNode]
    cases: list[CaseCertificate]
    overall_verdict: str  # verified | incomplete | failed
    conclusion: str
    corollary: ClaimNode | None = None

    def axioms_used(self) -> tuple[str, ...]:
        used: set[str] = set()
        for node in self.preliminaries:
            used |= node.axioms_used()
        for case in self.cases:
            used |= set(case.axioms_used())
        if self.corollary is not None:
            used |= self.corollary.axioms_used()
        return tuple(sorted(used))

    def to_json(self) -> dict:
        return {
            "format": FORMAT_TAG,
            "model_digest": self.model_digest,
            "group_order": self.group_order,
            "tangent_dimension": self.tangent_dimension,
            "orbit_sizes": list(self.orbit_sizes),
            "preliminaries": [node.to_json() for node in self.preliminaries],
            "cases": [case.to_json() for case in self.cases],
            "axioms_used": list(self.axioms_used()),
            "axiom_catalog": {k: AXIOM_CATALOG[k] for k in self.axioms_used()},
            "overall_verdict": self.overall_verdict,
            "conclusion": self.conclusion,
            "corollary": self.corollary.to_json() if self.corollary else None,
        }

    @classmethod
    def from_json(cls, data: dict) -> "TheoremCertificate":
        if data.get("format") != FORMAT_TAG:
            raise CertificateError(f"unsupported certificate format {data.get('format')!r}")
        return cls(
            model_digest=data["model_digest"],
            group_order=data["group_order"],
            tangent_dimension=data["tangent_dimension"],
            orbit_sizes=tuple(data["orbit_sizes"]),
            preliminaries=[ClaimNode.from_json(n) for n in data["preliminaries"]],
            cases=[CaseCertificate.from_json(c) for c in data["cases"]],
            overall_verdict=data["overall_verdict"],
            conclusion=data["conclusion"],
            corollary=ClaimNode.from_json(data["corollary"]) if data.get("corollary") else None,
        )


def emit_certificate(cert: TheoremCertificate) -> str:
    """Serialize deterministically; rejects empty or inconsistent certificates."""
    if not cert.cases:
        raise CertificateError("refusing to emit a certificate with no cases")
    validate_certificate(cert)
    return json.dumps(cert.to_json(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def parse_certificate(text: str) -> TheoremCertificate:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as err:
        raise CertificateError(f"certificate is not valid JSON: {err}") from None
    cert = TheoremCertificate.from_json(data)
    validate_certificate(cert)
    return cert


def validate_certificate(cert: TheoremCertificate) -> None:
    """Structural hygiene: methods, axiom references, verdict consistency."""
    for root in list(cert.preliminaries) + [case.root for case in cert.cases]:
        for node in root.walk():
            if node.method not in METHODS:
                raise CertificateError(f"{node.claim_id}: unknown method {node.method!r}")
            if node.method == "axiom":
                if not node.axiom_id:
                    raise CertificateError(f"{node.claim_id}: axiom leaf without identifier")
            elif node.axiom_id is not None:
                raise CertificateError(f"{node.claim_id}: non-axiom node carries an axiom id")
            if node.method != "axiom" and node.operation and not node.inputs_digest:
                raise CertificateError(f"{node.claim_id}: operation without input digest")
    validate_axiom_ids(cert.axioms_used())
    for case in cert.cases:
        ok = all(node.ok for node in case.root.walk())
        expected = "Excluded" if ok else "Failed"
        if case.verdict != expected:
            raise CertificateError(
                f"case m={case.m}: verdict {case.verdict} inconsistent with claim tree"
            )
    if cert.overall_verdict == "verified" and any(c.verdict != "Excluded" for c in cert.cases):
        raise CertificateError("verified verdict with a non-excluded case")

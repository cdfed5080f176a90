"""Model file parsing.

A model file is line oriented, UTF-8, with ``#`` comments:

    modulus = 40
    weights = 1 1 1 1 2
    quartic = y^2 + x1^3*x2 + x2^3*x3 + x3^3*x4 + x4^3*x1

    [generator diagonal]
    perm = 1 2 3 4
    x_exponents = 0 38 4 26
    y_exponent = 39

    [generator cycle]
    perm = 2 3 4 1
    x_exponents = 0 0 0 0
    y_exponent = 0

    relation = cycle diagonal 13

``perm`` lists, 1-based, the coordinate each x_i is sent to.  A ``relation``
line declares g h k, meaning g h g^-1 must equal h^k; when present the engine
checks the declared relation and raises ConventionMismatch if it only holds
after reading every perm in the opposite direction, which catches models
written against the transposed convention.

The polynomial grammar supports ``+``, ``*``, integer coefficients and caret
powers over the variables x1..x4, y.  Every term must be quasi-homogeneous of
weighted degree 4 (weights 1,1,1,1,2) and the ``y^2`` term must be present
with coefficient 1.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .errors import (
    ConventionMismatch,
    DegreeError,
    ModelError,
    ModelSyntaxError,
    UnknownVariableError,
)
from .groups import AmbientSignature, MonomialSymmetry, conjugation_power
from .sections import QuarticTerm, VarietyModel


@dataclass(frozen=True)
class Relation:
    conjugator: str
    base: str
    power: int


@dataclass(frozen=True)
class ParsedModel:
    variety: VarietyModel
    generator_names: tuple[str, ...]
    generators: dict[str, MonomialSymmetry]
    relations: tuple[Relation, ...]

    @property
    def signature(self) -> AmbientSignature:
        return self.variety.signature

    def generator_list(self) -> list[MonomialSymmetry]:
        return [self.generators[name] for name in self.generator_names]

    def digest(self) -> str:
        payload = {
            "modulus": self.signature.modulus,
            "weights": list(self.signature.weights),
            "terms": sorted(
                [t.coefficient, list(t.x_powers), t.y_power] for t in self.variety.terms
            ),
            "generators": {
                name: {
                    "perm": list(g.perm),
                    "x_exponents": list(g.x_exponents),
                    "y_exponent": g.y_exponent,
                }
                for name, g in self.generators.items()
            },
            "relations": [[r.conjugator, r.base, r.power] for r in self.relations],
        }
        text = json.dumps(payload, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(text.encode("utf-8")).hexdigest()

    def check_relations(self) -> None:
        """Verify declared conjugation relations under the engine convention.

        When a relation fails but holds with all permutations read in the
        opposite direction, the model was written against the transposed
        convention and ConventionMismatch pinpoints that; otherwise the
        relation is simply wrong and ModelError is raised.
        """
        for rel in self.relations:
            try:
                g = self.generators[rel.conjugator]
                h = self.generators[rel.base]
            except KeyError as missing:
                raise ModelError(f"relation references unknown generator {missing}") from None
            if conjugation_power(g, h) == rel.power:
                continue
            flipped_power = conjugation_power(_flip(g), _flip(h))
            if flipped_power == rel.power:
                raise ConventionMismatch(
                    f"relation {rel.conjugator} {rel.base} {rel.power} holds only under "
                    "the opposite permutation-direction convention; invert the perm lines"
                )
            raise ModelError(
                f"declared relation {rel.conjugator}*{rel.base}*{rel.conjugator}^-1 = "
                f"{rel.base}^{rel.power} does not hold"
            )


def _flip(g: MonomialSymmetry) -> MonomialSymmetry:
    inv = [0] * len(g.perm)
    for i, p in enumerate(g.perm):
        inv[p] = i
    return MonomialSymmetry(g.signature, tuple(inv), g.x_exponents, g.y_exponent)


# ---------------------------------------------------------------- polynomial

class _Tokenizer:
    def __init__(self, text: str, line: int, column_offset: int):
        self.text = text
        self.pos = 0
        self.line = line
        self.column_offset = column_offset

    def error(self, message: str, at: int | None = None):
        column = self.column_offset + (self.pos if at is None else at) + 1
        raise ModelSyntaxError(message, self.line, column)

    def tokens(self):
        text = self.text
        while self.pos < len(text):
            ch = text[self.pos]
            if ch.isspace():
                self.pos += 1
                continue
            start = self.pos
            if ch in "+*^-":
                self.pos += 1
                yield (ch, ch, start)
            elif ch.isdigit():
                while self.pos < len(text) and text[self.pos].isdigit():
                    self.pos += 1
                yield ("int", int(text[start : self.pos]), start)
            elif ch.isalpha():
                while self.pos < len(text) and text[self.pos].isalnum():
                    self.pos += 1
                yield ("name", text[start : self.pos], start)
            else:
                self.error(f"unexpected character {ch!r}", start)
        yield ("end", None, len(text))


def parse_polynomial(text: str, signature: AmbientSignature, line: int = 1, column_offset: int = 0):
    """Parse a sum of monomial terms into (coefficient, x_powers, y_power) data."""
    variables = {f"x{i + 1}": i for i in range(signature.x_count)}
    tokenizer = _Tokenizer(text, line, column_offset)
    stream = list(tokenizer.tokens())
    pos = 0

    def peek():
        return stream[pos]

    def advance():
        nonlocal pos
        token = stream[pos]
        pos += 1
        return token

    def parse_factor(term):
        kind, value, at = advance()
        if kind == "int":
            term["coefficient"] *= value
            return
        if kind != "name":
            tokenizer.error("expected a coefficient or a variable", at)
        if value == "y":
            slot = "y"
        elif value in variables:
            slot = variables[value]
        else:
            raise UnknownVariableError(
                f"line {line}: unknown variable {value!r}; expected x1..x{signature.x_count} or y"
            )
        power = 1
        if peek()[0] == "^":
            advance()
            kind2, value2, at2 = advance()
            if kind2 != "int":
                tokenizer.error("expected an integer exponent after '^'", at2)
            power = value2
        if slot == "y":
            term["y_power"] += power
        else:
            term["x_powers"][slot] += power

    def parse_term(sign):
        term = {"coefficient": sign, "x_powers": [0] * signature.x_count, "y_power": 0}
        parse_factor(term)
        while peek()[0] == "*":
            advance()
            parse_factor(term)
        return QuarticTerm(term["coefficient"], tuple(term["x_powers"]), term["y_power"])

    terms = []
    sign = 1
    if peek()[0] == "-":
        advance()
        sign = -1
    terms.append(parse_term(sign))
    while peek()[0] in ("+", "-"):
        kind, _, _ = advance()
        terms.append(parse_term(-1 if kind == "-" else 1))
    kind, _, at = peek()
    if kind != "end":
        tokenizer.error("trailing input after the polynomial", at)

    for term in terms:
        if term.weighted_degree() != 4:
            raise DegreeError(
                f"line {line}: term with x-powers {term.x_powers} and y-power "
                f"{term.y_power} has weighted degree {term.weighted_degree()}, expected 4"
            )
    # deterministic term order: lexicographic multi-index
    terms.sort(key=lambda t: (t.x_powers, t.y_power))
    return tuple(terms)


# ---------------------------------------------------------------- model file

def parse_model(text: str) -> ParsedModel:
    keys: dict[str, tuple[str, int]] = {}
    relations: list[tuple[str, int]] = []
    generator_blocks: list[tuple[str, dict[str, tuple[str, int]], int]] = []
    current: dict[str, tuple[str, int]] | None = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            if not line.endswith("]"):
                raise ModelSyntaxError("unterminated section header", lineno, len(raw))
            parts = line[1:-1].split()
            if len(parts) != 2 or parts[0] != "generator":
                raise ModelSyntaxError(
                    "section headers look like [generator NAME]", lineno, 1
                )
            current = {}
            generator_blocks.append((parts[1], current, lineno))
            continue
        if "=" not in line:
            raise ModelSyntaxError("expected KEY = VALUE", lineno, 1)
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if key == "relation":
            relations.append((value, lineno))
        elif current is not None:
            current[key] = (value, lineno)
        else:
            keys[key] = (value, lineno)

    def require(table, key, context):
        if key not in table:
            raise ModelError(f"{context} is missing the {key!r} entry")
        return table[key]

    modulus_text, modulus_line = require(keys, "modulus", "the model")
    try:
        modulus = int(modulus_text)
    except ValueError:
        raise ModelSyntaxError("modulus must be an integer", modulus_line, 1) from None

    weights_text, weights_line = require(keys, "weights", "the model")
    weights = _int_list(weights_text, weights_line)
    if len(weights) < 2 or weights[-1] != 2 or any(w != 1 for w in weights[:-1]):
        raise ModelError(
            f"unsupported weights {weights}; this engine handles P(1,...,1,2)"
        )
    signature = AmbientSignature(x_count=len(weights) - 1, modulus=modulus)
    if signature.x_count != 4:
        raise ModelError("the section machinery requires exactly four weight-1 coordinates")

    quartic_text, quartic_line = require(keys, "quartic", "the model")
    terms = parse_polynomial(quartic_text, signature, line=quartic_line)
    try:
        variety = VarietyModel(signature, terms)
    except ValueError as err:
        raise ModelError(str(err)) from None

    if not generator_blocks:
        raise ModelError("the model declares no generators")
    names: list[str] = []
    generators: dict[str, MonomialSymmetry] = {}
    for name, block, header_line in generator_blocks:
        if name in generators:
            raise ModelError(f"duplicate generator name {name!r}")
        perm_text, perm_line = require(block, "perm", f"generator {name!r}")
        perm = _int_list(perm_text, perm_line)
        if sorted(perm) != list(range(1, signature.x_count + 1)):
            raise ModelError(
                f"generator {name!r}: perm must be a 1-based bijection of 1..{signature.x_count}"
            )
        exps_text, exps_line = require(block, "x_exponents", f"generator {name!r}")
        exps = _int_list(exps_text, exps_line)
        if len(exps) != signature.x_count:
            raise ModelError(f"generator {name!r}: expected {signature.x_count} x-exponents")
        y_text, y_line = require(block, "y_exponent", f"generator {name!r}")
        try:
            y_exponent = int(y_text)
        except ValueError:
            raise ModelSyntaxError("y_exponent must be an integer", y_line, 1) from None
        names.append(name)
        generators[name] = MonomialSymmetry(
            signature, tuple(p - 1 for p in perm), tuple(exps), y_exponent
        )

    parsed_relations = []
    for value, lineno in relations:
        parts = value.split()
        if len(parts) != 3:
            raise ModelSyntaxError("relation lines look like: relation = G H K", lineno, 1)
        try:
            power = int(parts[2])
        except ValueError:
            raise ModelSyntaxError("relation power must be an integer", lineno, 1) from None
        parsed_relations.append(Relation(parts[0], parts[1], power))

    return ParsedModel(variety, tuple(names), generators, tuple(parsed_relations))


def _int_list(text: str, lineno: int) -> list[int]:
    try:
        return [int(tok) for tok in text.split()]
    except ValueError:
        raise ModelSyntaxError("expected a whitespace-separated integer list", lineno, 1) from None


def load_model(path) -> ParsedModel:
    return parse_model(Path(path).read_text(encoding="utf-8"))


def builtin_model_path(name: str = "quartic") -> Path:
    """Path of a model shipped with the package (quartic, fermat)."""
    resource = resources.files("dsolid").joinpath(f"data/{name}.model")
    return Path(str(resource))

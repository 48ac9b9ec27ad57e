"""Parser and canonical writer for the keyed input format.

Grammar: `amb_space d` first, then any of the sections
cone / inequalities / equations / congruences / vertices (each with a row
count and that many rows) and grading / dehomogenization (one row each).
`#` starts a comment.  Congruence rows carry d coefficients plus a positive
modulus; vertex rows carry d coordinates plus a positive denominator.
"""

from __future__ import annotations

from typing import Iterator, Optional

from .cones import InputSystem
from .errors import ParseError

_MATRIX_SECTIONS = {"cone", "inequalities", "equations", "congruences", "vertices"}
_FORM_SECTIONS = {"grading", "dehomogenization"}


class _Tokens:
    def __init__(self, text: str):
        self.items: list[tuple[str, int, int]] = []
        for ln, line in enumerate(text.splitlines(), start=1):
            body = line.split("#", 1)[0]
            col = 1
            for piece in body.split():
                col = body.index(piece, col - 1) + 1
                self.items.append((piece, ln, col))
                col += len(piece)
        self.pos = 0
        last = text.count("\n") + 1
        self.eof = (last, 1)

    def peek(self) -> Optional[tuple[str, int, int]]:
        return self.items[self.pos] if self.pos < len(self.items) else None

    def next(self, expectation: str) -> tuple[str, int, int]:
        tok = self.peek()
        if tok is None:
            raise ParseError(f"unexpected end of input, expected {expectation}", *self.eof)
        self.pos += 1
        return tok

    def next_int(self, expectation: str) -> int:
        tok, ln, col = self.next(expectation)
        try:
            return int(tok)
        except ValueError:
            raise ParseError(f"expected {expectation}, found {tok!r}", ln, col) from None


def parse_input(text: str) -> InputSystem:
    """Parse an input file into an InputSystem.

    Errors carry line and column of the offending token.
    """
    toks = _Tokens(text)
    tok, ln, col = toks.next("keyword 'amb_space'")
    if tok != "amb_space":
        raise ParseError(f"expected 'amb_space', found {tok!r}", ln, col)
    dim = toks.next_int("ambient dimension")
    if dim < 1:
        raise ParseError("ambient dimension must be positive", ln, col)
    sections: dict[str, list] = {}
    while True:
        head = toks.peek()
        if head is None:
            break
        key, ln, col = toks.next("section keyword")
        if key in sections:
            raise ParseError(f"duplicate section {key!r}", ln, col)
        if key in _MATRIX_SECTIONS:
            count = toks.next_int(f"row count for {key!r}")
            if count < 0:
                raise ParseError("row count must be nonnegative", ln, col)
            width = dim + 1 if key in ("congruences", "vertices") else dim
            rows = []
            for _ in range(count):
                row = []
                for j in range(width):
                    pos = toks.peek()
                    row.append(toks.next_int(f"entry of a {key!r} row"))
                    if j == width - 1 and key in ("congruences", "vertices") and row[-1] <= 0:
                        what = "modulus" if key == "congruences" else "denominator"
                        where = (pos[1], pos[2]) if pos else toks.eof
                        raise ParseError(f"{what} must be positive", *where)
                rows.append(tuple(row))
            sections[key] = rows
        elif key in _FORM_SECTIONS:
            sections[key] = [tuple(toks.next_int(f"entry of the {key} row") for _ in range(dim))]
        else:
            raise ParseError(f"unknown section {key!r}", ln, col)
    congs = sections.get("congruences", [])
    verts = sections.get("vertices", [])
    return InputSystem(
        dim=dim,
        inequalities=tuple(sections.get("inequalities", [])),
        equations=tuple(sections.get("equations", [])),
        congruences=tuple(r[:-1] for r in congs),
        cong_moduli=tuple(r[-1] for r in congs),
        cone_rays=tuple(sections.get("cone", [])),
        vertices=tuple(r[:-1] for r in verts),
        vertex_denoms=tuple(r[-1] for r in verts),
        grading=sections["grading"][0] if "grading" in sections else None,
        dehomogenization=sections["dehomogenization"][0] if "dehomogenization" in sections else None,
    )


def write_input(system: InputSystem) -> str:
    """Canonical re-serialization of an InputSystem (inverse of parse_input)."""
    out = [f"amb_space {system.dim}"]

    def block(key, rows):
        if not rows:
            return
        out.append(f"{key} {len(rows)}")
        out.extend(" ".join(str(x) for x in row) for row in rows)

    block("cone", system.cone_rays)
    block("inequalities", system.inequalities)
    block("equations", system.equations)
    block("congruences", [row + (m,) for row, m in zip(system.congruences, system.cong_moduli)])
    block("vertices", [row + (q,) for row, q in zip(system.vertices, system.vertex_denoms)])
    if system.grading is not None:
        out.append("grading")
        out.append(" ".join(str(x) for x in system.grading))
    if system.dehomogenization is not None:
        out.append("dehomogenization")
        out.append(" ".join(str(x) for x in system.dehomogenization))
    return "\n".join(out) + "\n"

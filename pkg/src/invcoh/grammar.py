"""Surface syntax shared by the command line and the script files: tensor
words, move scripts with tree paths, and cochain table files.  Every parse
error carries a line and column."""

from __future__ import annotations

import re
from typing import Optional

from . import composites as comp
from .models import FiniteAbelianGroup, _split_args
from .words import Dual, DualGen, Gen, Tensor, TensorWord, UNIT, max_generator, to_text


class ParseError(ValueError):
    def __init__(self, msg: str, line: int = 1, col: int = 1):
        super().__init__(f"line {line}, column {col}: {msg}")
        self.line = line
        self.col = col


_WORD_TOKEN = re.compile(r"\s*(X\d+\^-1|X\d+|S\b|dual\b|[()*])")


def _tokenize_word(text: str, line: int) -> list[tuple[str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        m = _WORD_TOKEN.match(text, pos)
        if not m:
            rest = text[pos:].lstrip()
            if not rest:
                break
            col = pos + (len(text[pos:]) - len(rest)) + 1
            raise ParseError(f"unexpected input {rest.split()[0]!r}", line, col)
        out.append((m.group(1), m.start(1) + 1))
        pos = m.end()
    return out


def parse_word(text: str, n: Optional[int] = None, line: int = 1) -> TensorWord:
    """Parse the surface grammar: S, X<k>, X<k>^-1, dual(w), (u * v).
    Parentheses are mandatory for each tensor node.  With n given, generator
    indices above n are rejected."""
    tokens = _tokenize_word(text, line)
    pos = 0

    def peek():
        return tokens[pos][0] if pos < len(tokens) else None

    def here():
        return tokens[pos][1] if pos < len(tokens) else len(text) + 1

    def expect(tok):
        nonlocal pos
        if peek() != tok:
            raise ParseError(f"expected {tok!r}", line, here())
        pos += 1

    def atom() -> TensorWord:
        nonlocal pos
        t = peek()
        if t is None:
            raise ParseError("unexpected end of word", line, here())
        col = here()
        if t == "S":
            pos += 1
            return UNIT
        if t.startswith("X"):
            pos += 1
            inv = t.endswith("^-1")
            k = int(t[1 : -3] if inv else t[1:])
            if k < 1 or (n is not None and k > n):
                raise ParseError(f"unknown generator index {k}", line, col)
            return DualGen(k) if inv else Gen(k)
        if t == "dual":
            pos += 1
            expect("(")
            inner = atom()
            expect(")")
            return Dual(inner)
        if t == "(":
            pos += 1
            left = atom()
            expect("*")
            right = atom()
            expect(")")
            return Tensor(left, right)
        raise ParseError(f"unexpected token {t!r}", line, col)

    w = atom()
    if pos < len(tokens):
        raise ParseError(f"trailing input {tokens[pos][0]!r}", line, here())
    return w


def parse_path(text: str, line: int = 1, col: int = 1) -> comp.Path:
    text = text.strip()
    if text in ("ε", "e", ""):
        return ()
    segs = text.split(".")
    if not all(s in ("L", "R") for s in segs):
        raise ParseError(f"bad path {text!r} (use ε or dotted L/R)", line, col)
    return tuple(segs)


def path_to_text(path: comp.Path) -> str:
    return ".".join(path) if path else "ε"


_MOVE_LINE = re.compile(
    r"(?P<kind>assoc|unitor-left|unitor-right|twist|alphahat|alpha)\b"
    r"(?P<args>.*?)(?P<inv>\s*\^-1)?\s*@\s*(?P<path>\S+)\s*$"
)


def parse_move(text: str, n: Optional[int] = None, line: int = 1) -> comp.Move:
    """One move per line: `assoc @ L.R`, `unitor-left @ ε`,
    `twist (X1, X1^-1) @ R`, `alpha 2 @ ε`, `alphahat 1 ^-1 @ L`."""
    m = _MOVE_LINE.match(text.strip())
    if not m:
        raise ParseError("cannot parse move (need `kind args @ path`)", line)
    kind = m.group("kind")
    args = m.group("args").strip()
    inverted = m.group("inv") is not None
    path = parse_path(m.group("path"), line)
    if kind in ("assoc", "unitor-left", "unitor-right"):
        if args:
            raise ParseError(f"{kind} takes no arguments", line)
        if kind == "assoc":
            return comp.assoc(path, inverted)
        return comp.unitor(kind.removeprefix("unitor-"), path, inverted)
    if kind == "twist":
        if not (args.startswith("(") and args.endswith(")")):
            raise ParseError("twist needs two word operands: twist (u, v)", line)
        parts = _split_args(args[1:-1])
        if len(parts) != 2:
            raise ParseError("twist needs exactly two operands", line)
        u = parse_word(parts[0], n, line)
        v = parse_word(parts[1], n, line)
        return comp.twist(u, v, path, inverted)
    # alpha / alphahat
    if not re.fullmatch(r"\d+", args):
        raise ParseError(f"{kind} needs a generator index", line)
    k = int(args)
    if k < 1 or (n is not None and k > n):
        raise ParseError(f"unknown generator index {k}", line)
    ctor = comp.alpha if kind == "alpha" else comp.alphahat
    return ctor(k, path, inverted)


def move_to_text(m: comp.Move) -> str:
    if m.kind == "assoc":
        head = "assoc"
    elif m.kind == "unitor_l":
        head = "unitor-left"
    elif m.kind == "unitor_r":
        head = "unitor-right"
    elif m.kind == "twist":
        head = f"twist ({to_text(m.u)}, {to_text(m.v)})"
    elif m.kind in ("alpha", "alphahat"):
        head = f"{m.kind} {m.gen}"
    else:
        raise ValueError(f"unknown move kind {m.kind!r}")
    inv = " ^-1" if m.inverted else ""
    return f"{head}{inv} @ {path_to_text(m.path)}"


def parse_composite(text: str, n: Optional[int] = None) -> comp.FormalComposite:
    """A script: a `source:` header line, then one move per line.  Blank
    lines and `#` comments are skipped.  The composite is validated move by
    move; a move that does not apply reports its line number."""
    source = None
    moves: list[tuple[comp.Move, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].strip()
        if not stripped:
            continue
        if source is None:
            if not stripped.startswith("source:"):
                raise ParseError("script must start with a `source:` line", lineno)
            source = parse_word(stripped.removeprefix("source:"), n, lineno)
            continue
        moves.append((parse_move(stripped, n, lineno), lineno))
    if source is None:
        raise ParseError("empty script (no `source:` line)", 1)
    if n is None:
        n = max(
            [max_generator(source)]
            + [m.gen for m, _ in moves if m.gen is not None]
            + [max_generator(x) for m, _ in moves if m.u is not None for x in (m.u, m.v)]
        )
        n = max(n, 1)
    # validate incrementally so errors carry the offending line
    w = source
    for m, lineno in moves:
        try:
            w = comp.apply_move(w, m)
        except comp.MoveError as exc:
            raise ParseError(f"move does not apply: {exc}", lineno) from exc
    return comp.FormalComposite(source, tuple(m for m, _ in moves), n)


def composite_to_text(c: comp.FormalComposite) -> str:
    lines = [f"source: {to_text(c.source)}"]
    lines += [move_to_text(m) for m in c.moves]
    return "\n".join(lines) + "\n"


def parse_cochain_table(text: str, A: FiniteAbelianGroup, N: FiniteAbelianGroup, degree: int) -> dict:
    """Cochain table file: lines `f[a,b,...] = n` with `degree` arguments
    per line; any identifier before the bracket.  Unlisted tuples are zero."""
    table: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].strip()
        if not stripped:
            continue
        m = re.fullmatch(r"\w+\[(?P<args>.*)\]\s*=\s*(?P<val>.+)", stripped)
        if not m:
            raise ParseError("expected `f[a,...] = n`", lineno)
        parts = _split_args(m.group("args"))
        if len(parts) != degree:
            raise ParseError(f"need {degree} arguments, got {len(parts)}", lineno)
        try:
            key = tuple(FiniteAbelianGroup.parse_element(A, p) for p in parts)
            val = FiniteAbelianGroup.parse_element(N, m.group("val"))
        except Exception as exc:
            raise ParseError(str(exc), lineno) from exc
        table[key] = val
    return table

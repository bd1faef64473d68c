"""
Parsing of user-supplied algebra, pair and space strings.

Algebras: SL_R(n), SL_C(n), SL_H(n), SO(p,q), SO_C(n), SU(p,q), SP(p,q), SP_C(n), SOSTAR(2n);
SO(n), SU(n) and SP(n) stand for the compact forms with q = 0.
Pairs: G/H, G/H1xH2 for a block-diagonal product (SL_R and SO_C), or GROUP(H) for the
group space H x H / diag(H).
Spaces: S^d or S(d), CP(d), GrC(p,q), GrH(p,q), GrR(p,q), SU(n)/SO(n), SU(2n)/SP(n),
SO(2n)/U(n), SP(n)/U(n), SU(n), SO(n), SP(n), POINT.
Matching is case-insensitive; surrounding whitespace is ignored.
"""
import re
from typing import List, Optional, Tuple

from utils.cohomology import SymSpaceId
from utils.errors import ParseError
from utils.families import FAMILIES, AlgebraSpec
from utils.pairs import GROUP_SPACE, UPPER_LEFT, PairSpec, infer_embedding

_NAME = re.compile(r"[A-Z][A-Z_]*")
_INT = re.compile(r"\d+")

TWO_PARAM_FAMILIES = ("SO", "SU", "SP")


class _Cursor:
    def __init__(self, text: str):
        self.original = text
        self.text = text.strip().upper()
        self.offset = len(text) - len(text.lstrip())
        self.pos = 0
        if not self.text:
            raise ParseError("empty input", text, 0, "an expression")
        match = re.search(r"\s", self.text)
        if match:
            self.fail("unexpected whitespace", match.start(), "no whitespace inside the expression")

    def fail(self, message: str, pos: Optional[int] = None, expected: Optional[str] = None):
        raise ParseError(message, self.original, self.offset + (self.pos if pos is None else pos), expected)

    def at_end(self) -> bool:
        return self.pos >= len(self.text)

    def peek(self, token: str) -> bool:
        return self.text.startswith(token, self.pos)

    def expect(self, token: str) -> None:
        if not self.peek(token):
            found = self.text[self.pos] if not self.at_end() else "end of input"
            self.fail(f"unexpected {found!r}", expected=repr(token))
        self.pos += len(token)

    def name(self, expected: str) -> Tuple[str, int]:
        match = _NAME.match(self.text, self.pos)
        if not match:
            self.fail("expected a name", expected=expected)
        start = self.pos
        self.pos = match.end()
        return match.group(), start

    def integer(self) -> int:
        match = _INT.match(self.text, self.pos)
        if not match:
            self.fail("expected an integer", expected="a non-negative integer")
        self.pos = match.end()
        return int(match.group())

    def integer_list(self) -> List[int]:
        self.expect("(")
        values = [self.integer()]
        while self.peek(","):
            self.pos += 1
            values.append(self.integer())
        self.expect(")")
        return values

    def finish(self) -> None:
        if not self.at_end():
            self.fail(f"trailing input {self.text[self.pos:]!r}", expected="end of input")


def _algebra(cur: _Cursor) -> AlgebraSpec:
    family, start = cur.name("an algebra family")
    if family not in FAMILIES:
        cur.fail(f"unknown family {family!r}", start, " | ".join(FAMILIES))
    params = cur.integer_list()
    if family in TWO_PARAM_FAMILIES and len(params) == 1:
        params.append(0)
    expected = 2 if family in TWO_PARAM_FAMILIES else 1
    if len(params) != expected:
        cur.fail(f"{family} takes {expected} parameter(s)", start, f"{family}({','.join(['n'] * expected)})")
    return AlgebraSpec(family, tuple(params))


def parse_spec(text: str) -> AlgebraSpec:
    cur = _Cursor(text)
    spec = _algebra(cur)
    cur.finish()
    return spec


def parse_pair(text: str) -> PairSpec:
    cur = _Cursor(text)
    if cur.peek("GROUP("):
        cur.pos += len("GROUP(")
        h = _algebra(cur)
        cur.expect(")")
        cur.finish()
        return PairSpec(h, h, GROUP_SPACE)
    g = _algebra(cur)
    cur.expect("/")
    h = _algebra(cur)
    if cur.peek("X"):
        cur.pos += 1
        second = _algebra(cur)
        cur.finish()
        return PairSpec(g, h, UPPER_LEFT, second)
    cur.finish()
    return PairSpec(g, h, infer_embedding(g, h))


_QUOTIENTS = {
    ("SU", "SO"): ("SU_over_SO", 1),
    ("SU", "SP"): ("SU2n_over_Sp", 2),
    ("SO", "U"): ("SO2n_over_U", 2),
    ("SP", "U"): ("Sp_over_U", 1),
}
_GRASSMANNIANS = {"GRC": "GrassC", "GRH": "GrassH", "GRR": "GrassR_oriented"}


def parse_space(text: str) -> SymSpaceId:
    cur = _Cursor(text)
    name, start = cur.name("a space name")
    if name == "POINT":
        cur.finish()
        return SymSpaceId("Point")
    if name == "S" and cur.peek("^"):
        cur.pos += 1
        d = cur.integer()
        cur.finish()
        return SymSpaceId("Sphere", (d,))
    params = cur.integer_list()
    if name == "S" and len(params) == 1:
        cur.finish()
        return SymSpaceId("Sphere", (params[0],))
    if name == "CP" and len(params) == 1:
        cur.finish()
        return SymSpaceId("CPn", (params[0],))
    if name in _GRASSMANNIANS and len(params) == 2:
        cur.finish()
        return SymSpaceId(_GRASSMANNIANS[name], tuple(params))
    if name in ("SU", "SO", "SP") and len(params) == 1:
        if cur.at_end():
            return SymSpaceId("GroupManifold", (params[0],), group=name)
        cur.expect("/")
        sub, sub_start = cur.name("SO | SP | U")
        sub_params = cur.integer_list()
        cur.finish()
        if (name, sub) not in _QUOTIENTS or len(sub_params) != 1:
            cur.fail(f"unsupported quotient {name}/{sub}", sub_start, "SU(n)/SO(n) | SU(2n)/SP(n) | SO(2n)/U(n) | SP(n)/U(n)")
        family, ratio = _QUOTIENTS[(name, sub)]
        if params[0] != ratio * sub_params[0]:
            cur.fail(f"{name}({params[0]})/{sub}({sub_params[0]}) has mismatched sizes", sub_start, f"{name}({ratio * sub_params[0]})")
        return SymSpaceId(family, (sub_params[0],))
    cur.fail(f"unknown space {name}", start, "S^d | CP(d) | GrC(p,q) | GrH(p,q) | GrR(p,q) | SU(n) | SO(n) | SP(n) | POINT")

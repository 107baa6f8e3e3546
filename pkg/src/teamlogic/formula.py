"""Formula language: AST, concrete syntax, fragment classification.

The concrete syntax is ASCII (unicode aliases are accepted on input)::

    ~   negation            &   conjunction
    |   local disjunction   \\/  global disjunction
    ->  intuitionistic implication
    ->. abbreviation  a ->. b  :=  ~a | b
    ->: abbreviation  a ->: b  :=  ~a \\/ b
    _|_ falsum          T   verum (desugars to ~_|_)
    =(p1 p2, q)  dependence atom,   =(q)  constancy atom
    T B <= p q   inclusion atom, T/B are the constants 1/0

Precedence, tightest first: ``~``, ``&``, ``|``, ``\\/``, ``->``.  All binary
connectives associate to the right.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Union


class FormulaSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class SubstitutionError(IndexError):
    pass


@dataclass(frozen=True)
class Const:
    """Truth-value constant usable as an inclusion-atom term."""

    value: int

    def __repr__(self):
        return "TOP" if self.value else "BOT"


TOP = Const(1)
BOT = Const(0)

Term = Union[str, Const]


class Formula:
    __slots__ = ()

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True)
class Prop(Formula):
    name: str


@dataclass(frozen=True)
class Bottom(Formula):
    pass


@dataclass(frozen=True)
class Neg(Formula):
    sub: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class LocalOr(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class GlobalOr(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class IntImpl(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class DepAtom(Formula):
    args: tuple
    target: str

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))


@dataclass(frozen=True)
class IncAtom(Formula):
    lhs: tuple
    rhs: tuple

    def __post_init__(self):
        object.__setattr__(self, "lhs", tuple(self.lhs))
        object.__setattr__(self, "rhs", tuple(self.rhs))
        if not self.lhs or len(self.lhs) != len(self.rhs):
            raise ValueError(
                f"inclusion atom needs equal positive arity, got {len(self.lhs)} and {len(self.rhs)}")


BINARY = (And, LocalOr, GlobalOr, IntImpl)
VERUM = Neg(Bottom())


# -- aggregates --------------------------------------------------------------

def _fold(items, cls, empty):
    items = list(items)
    if not items:
        return empty
    out = items[-1]
    for f in reversed(items[:-1]):
        out = cls(f, out)
    return out


def conj(*items: Formula) -> Formula:
    """Right-nested conjunction; the empty conjunction is ``~_|_``."""
    return _fold(items, And, VERUM)


def ldisj(*items: Formula) -> Formula:
    """Right-nested local disjunction; the empty one is ``_|_``."""
    return _fold(items, LocalOr, Bottom())


def gdisj(*items: Formula) -> Formula:
    """Right-nested global disjunction; the empty one is ``_|_``."""
    return _fold(items, GlobalOr, Bottom())


def flatten(phi: Formula, cls) -> list:
    """Inverse of the right-nested fold for the connective ``cls``."""
    out = []
    while isinstance(phi, cls):
        out.append(phi.left)
        phi = phi.right
    out.append(phi)
    return out


# -- traversal ---------------------------------------------------------------

def children(phi: Formula) -> tuple:
    if isinstance(phi, Neg):
        return (phi.sub,)
    if isinstance(phi, BINARY):
        return (phi.left, phi.right)
    return ()


def subformulas(phi: Formula) -> Iterator[Formula]:
    """Pre-order, left to right."""
    stack = [phi]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(children(node)))


def variables(phi: Formula) -> frozenset:
    out = set()
    for node in subformulas(phi):
        if isinstance(node, Prop):
            out.add(node.name)
        elif isinstance(node, DepAtom):
            out.update(node.args)
            out.add(node.target)
        elif isinstance(node, IncAtom):
            out.update(x for x in node.lhs + node.rhs if isinstance(x, str))
    return frozenset(out)


def size(phi: Formula) -> int:
    return sum(1 for _ in subformulas(phi))


def depth(phi: Formula) -> int:
    kids = children(phi)
    return 1 + max((depth(c) for c in kids), default=0)


_KIND = {Prop: "prop", Bottom: "bot", Neg: "neg", And: "and", LocalOr: "lor",
         GlobalOr: "gor", IntImpl: "impl", DepAtom: "dep", IncAtom: "inc"}


def features(phi: Formula) -> frozenset:
    return frozenset(_KIND[type(node)] for node in subformulas(phi))


# -- fragments ---------------------------------------------------------------

@dataclass(frozen=True)
class FragmentSpec:
    name: str
    atoms: frozenset
    connectives: frozenset
    closure_class: str

    def admits(self, phi: Formula) -> bool:
        return features(phi) <= self.atoms | self.connectives


_BASE_ATOMS = frozenset({"prop", "bot"})
_BASE_CONN = frozenset({"neg", "and", "lor"})

FRAGMENTS = {
    spec.name: spec
    for spec in (
        FragmentSpec("PL", _BASE_ATOMS, _BASE_CONN, "flat"),
        FragmentSpec("PLv", _BASE_ATOMS, _BASE_CONN | {"gor"}, "nonempty downward closed"),
        FragmentSpec("PLdep", _BASE_ATOMS | {"dep"}, _BASE_CONN, "nonempty downward closed"),
        FragmentSpec("PLinc", _BASE_ATOMS | {"inc"}, _BASE_CONN, "union closed with empty team"),
        FragmentSpec("PLincV", _BASE_ATOMS | {"inc"}, _BASE_CONN | {"gor"}, "contains empty team"),
        FragmentSpec("PLdepinc", _BASE_ATOMS | {"dep", "inc"}, _BASE_CONN, "contains empty team"),
        FragmentSpec("PLfull", _BASE_ATOMS | {"dep", "inc"}, _BASE_CONN | {"gor", "impl"},
                     "contains empty team"),
    )
}


def fragment(name: str) -> FragmentSpec:
    try:
        return FRAGMENTS[name]
    except KeyError:
        raise ValueError(f"unknown fragment {name!r}; choose from {sorted(FRAGMENTS)}") from None


def classify(phi: Formula) -> frozenset:
    """Names of every fragment whose syntax contains ``phi``."""
    used = features(phi)
    return frozenset(name for name, spec in FRAGMENTS.items() if used <= spec.atoms | spec.connectives)


def is_classical(phi: Formula) -> bool:
    return features(phi) <= _BASE_ATOMS | _BASE_CONN


def is_harrop(phi: Formula) -> bool:
    """Harrop formulas: atoms, falsum, any negation, closed under ``&`` and ``|``."""
    if isinstance(phi, (Prop, Bottom, Neg)):
        return True
    if isinstance(phi, (And, LocalOr)):
        return is_harrop(phi.left) and is_harrop(phi.right)
    return False


def atomic_negation_only(phi: Formula) -> bool:
    return all(isinstance(node.sub, (Prop, Bottom)) for node in subformulas(phi) if isinstance(node, Neg))


def syntactically_downward_closed(phi: Formula) -> bool:
    """Sufficient syntactic test; inclusion atoms outside negations break it."""
    if isinstance(phi, IncAtom):
        return False
    if isinstance(phi, (Neg, IntImpl)):
        return True
    return all(syntactically_downward_closed(c) for c in children(phi))


def syntactically_union_closed(phi: Formula) -> bool:
    if isinstance(phi, (DepAtom, GlobalOr, IntImpl)):
        return False
    if isinstance(phi, Neg):
        return True
    return all(syntactically_union_closed(c) for c in children(phi))


# -- substitution ------------------------------------------------------------

def occurrence_paths(phi: Formula, p: str) -> list:
    """Child-index paths of every ``Prop(p)`` node, left to right."""
    out = []

    def walk(node, path):
        if isinstance(node, Prop) and node.name == p:
            out.append(tuple(path))
        for i, c in enumerate(children(node)):
            walk(c, path + [i])

    walk(phi, [])
    return out


def replace_at(phi: Formula, path, chi: Formula) -> Formula:
    if not path:
        return chi
    head, rest = path[0], path[1:]
    if isinstance(phi, Neg):
        return Neg(replace_at(phi.sub, rest, chi))
    if head == 0:
        return type(phi)(replace_at(phi.left, rest, chi), phi.right)
    return type(phi)(phi.left, replace_at(phi.right, rest, chi))


def substitute(phi: Formula, p: str, chi: Formula, occurrence: int = 0) -> Formula:
    """Replace the ``occurrence``-th instance of ``p`` (left to right) by ``chi``."""
    paths = occurrence_paths(phi, p)
    if not 0 <= occurrence < len(paths):
        raise SubstitutionError(f"{p!r} has {len(paths)} occurrence(s) in {to_text(phi)}, "
                                f"index {occurrence} out of range")
    return replace_at(phi, paths[occurrence], chi)


# -- printing ----------------------------------------------------------------

_LEVEL = {IntImpl: 0, GlobalOr: 1, LocalOr: 2, And: 3}
_SYMBOL = {IntImpl: "->", GlobalOr: "\\/", LocalOr: "|", And: "&"}
_NEG_LEVEL = 4
_ATOM_LEVEL = 5


def _level(phi):
    if isinstance(phi, Neg):
        return _NEG_LEVEL
    return _LEVEL.get(type(phi), _ATOM_LEVEL)


def _term_text(x: Term) -> str:
    if isinstance(x, Const):
        return "T" if x.value else "B"
    return x


def to_text(phi: Formula) -> str:
    if isinstance(phi, Prop):
        return phi.name
    if isinstance(phi, Bottom):
        return "_|_"
    if isinstance(phi, DepAtom):
        if not phi.args:
            return f"=({phi.target})"
        return f"=({' '.join(phi.args)}, {phi.target})"
    if isinstance(phi, IncAtom):
        return " ".join(map(_term_text, phi.lhs)) + " <= " + " ".join(map(_term_text, phi.rhs))
    if isinstance(phi, Neg):
        inner = to_text(phi.sub)
        return "~" + (f"({inner})" if _level(phi.sub) < _NEG_LEVEL else inner)
    level = _LEVEL[type(phi)]
    left, right = to_text(phi.left), to_text(phi.right)
    if _level(phi.left) <= level:
        left = f"({left})"
    if _level(phi.right) < level:
        right = f"({right})"
    return f"{left} {_SYMBOL[type(phi)]} {right}"


# -- parsing -----------------------------------------------------------------

_TOKEN_RE = re.compile(r"""
    (?P<ws>\s+)
  | (?P<bot>_\|_)
  | (?P<limp>->\.)
  | (?P<gimp>->:)
  | (?P<imp>->)
  | (?P<gor>\\/)
  | (?P<inc><=)
  | (?P<dep>=\()
  | (?P<lpar>\()
  | (?P<rpar>\))
  | (?P<comma>,)
  | (?P<neg>~)
  | (?P<and>&)
  | (?P<lor>\|)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
""", re.VERBOSE)

_UNICODE = {"¬": "~", "∧": "&", "∨": "|", "→": "->", "⊥": "_|_", "⊤": "T", "⊆": "<=", "⩖": "\\/"}


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        ch = text[pos]
        if ch in _UNICODE:
            kind = {"~": "neg", "&": "and", "|": "lor", "->": "imp", "_|_": "bot",
                    "T": "ident", "<=": "inc", "\\/": "gor"}[_UNICODE[ch]]
            tokens.append((kind, _UNICODE[ch], pos))
            pos += 1
            continue
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise FormulaSyntaxError(f"unexpected character {ch!r}", pos)
        if m.lastgroup != "ws":
            tokens.append((m.lastgroup, m.group(), pos))
        pos = m.end()
    tokens.append(("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            raise FormulaSyntaxError(f"expected {kind}, found {tok[1] or 'end of input'!r}", tok[2])
        self.i += 1
        return tok

    def formula(self):
        left = self.gor()
        kind = self.peek()[0]
        if kind in ("imp", "limp", "gimp"):
            self.take()
            right = self.formula()
            if kind == "imp":
                return IntImpl(left, right)
            if kind == "limp":
                return LocalOr(Neg(left), right)
            return GlobalOr(Neg(left), right)
        return left

    def _binary(self, kind, cls, sub, this):
        left = sub()
        if self.peek()[0] == kind:
            self.take()
            return cls(left, this())
        return left

    def gor(self):
        return self._binary("gor", GlobalOr, self.lor, self.gor)

    def lor(self):
        return self._binary("lor", LocalOr, self.conj, self.lor)

    def conj(self):
        return self._binary("and", And, self.unary, self.conj)

    def unary(self):
        if self.peek()[0] == "neg":
            self.take()
            return Neg(self.unary())
        return self.primary()

    def primary(self):
        kind, value, pos = self.peek()
        if kind == "lpar":
            self.take()
            inner = self.formula()
            self.take("rpar")
            return inner
        if kind == "bot":
            self.take()
            return Bottom()
        if kind == "dep":
            return self.dep_atom()
        if kind == "ident":
            return self.terms()
        raise FormulaSyntaxError(f"unexpected {value or 'end of input'!r}", pos)

    def dep_atom(self):
        start = self.take("dep")[2]
        before = []
        while self.peek()[0] == "ident":
            before.append(self._var(self.take()))
        if self.peek()[0] == "comma":
            self.take()
            target = self._var(self.take("ident"))
            self.take("rpar")
            return DepAtom(tuple(before), target)
        self.take("rpar")
        if len(before) != 1:
            raise FormulaSyntaxError("dependence atom needs '=(args, target)' or '=(target)'", start)
        return DepAtom((), before[0])

    @staticmethod
    def _var(tok):
        if tok[1] in ("T", "B"):
            raise FormulaSyntaxError(f"constant {tok[1]} is not a variable", tok[2])
        return tok[1]

    def _term_list(self):
        out = []
        while self.peek()[0] == "ident":
            value = self.take()[1]
            out.append(TOP if value == "T" else BOT if value == "B" else value)
        return out

    def terms(self):
        pos = self.peek()[2]
        lhs = self._term_list()
        if self.peek()[0] == "inc":
            inc_pos = self.take()[2]
            rhs = self._term_list()
            if len(lhs) != len(rhs):
                raise FormulaSyntaxError(
                    f"inclusion atom arity mismatch ({len(lhs)} vs {len(rhs)})", inc_pos)
            return IncAtom(tuple(lhs), tuple(rhs))
        if len(lhs) != 1:
            raise FormulaSyntaxError("juxtaposed terms outside an inclusion atom", pos)
        x = lhs[0]
        if x == TOP:
            return VERUM
        if x == BOT:
            return Bottom()
        return Prop(x)


def parse(text: str) -> Formula:
    parser = _Parser(text)
    phi = parser.formula()
    kind, value, pos = parser.peek()
    if kind != "eof":
        raise FormulaSyntaxError(f"trailing input {value!r}", pos)
    return phi

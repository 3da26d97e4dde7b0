"""Finitely presented *-algebras with exact noncommutative rewriting.

Four quantum coordinate *-algebras are built in:

  sphere      generators K, L (K self-adjoint), quantum 2-sphere with a
              rational radius-type parameter s in [0, 1] (default 1)
  disc        generator x, the quantum disc
  rp2         generators P, R, T (P self-adjoint), quantum real
              projective space
  suq2_mod_b  generators a, b (b self-adjoint), the quantum SU(2) in the
              squared-parameter convention with its b-generator made
              self-adjoint

Each presentation carries rewriting rules oriented by a degree-lexicographic
monomial order, so every element has a normal form supported on an explicit
monomial basis.  Coefficients are exact Laurent polynomials in q over the
rationals.  Generator maps between presentations (morphisms, the order-two
automorphisms of the sphere, and the inclusions) are verified by reducing
the image of every defining relation to normal form.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .coefficients import QLaurent

DEFAULT_STEP_BUDGET = 10 ** 6


class ExpressionError(ValueError):
    """Raised for a malformed algebra expression string."""


class PresentationError(ValueError):
    """Raised for an invalid presentation request or mismatched elements."""


class RewriteBudgetError(RuntimeError):
    """Raised when a normal-form computation exceeds its step budget."""


class Element:
    """A finite rational-Laurent combination of words in the generators.

    Elements are tied to their presentation; combining elements of
    different presentations raises PresentationError.  Arithmetic is at
    the free-algebra level, normalisation is explicit via normal_form.
    """

    __slots__ = ("presentation", "_terms")

    def __init__(self, presentation: "AlgebraPresentation",
                 terms: dict[tuple[int, ...], QLaurent]):
        self.presentation = presentation
        self._terms = {w: c for w, c in terms.items() if c}

    def terms(self) -> dict[tuple[int, ...], QLaurent]:
        """Copy of the underlying word -> coefficient mapping."""
        return dict(self._terms)

    def named_terms(self) -> list[tuple[tuple[str, ...], QLaurent]]:
        """Terms with words spelled by generator names, in monomial order."""
        p = self.presentation
        out = []
        for w in sorted(self._terms, key=p.deglex_key):
            out.append((tuple(p.generators[i] for i in w), self._terms[w]))
        return out

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        """Length of the longest word (0 for the zero element)."""
        return max((len(w) for w in self._terms), default=0)

    def coefficient(self, *gen_names: str) -> QLaurent:
        """Coefficient of the word spelled by the given generator names."""
        word = tuple(self.presentation.gen_index(n) for n in gen_names)
        return self._terms.get(word, QLaurent.zero())

    def _check_mate(self, other: "Element") -> None:
        if self.presentation is not other.presentation:
            raise PresentationError(
                "elements belong to different presentations: "
                f"{self.presentation.name!r} vs {other.presentation.name!r}")

    def __add__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        self._check_mate(other)
        merged = dict(self._terms)
        for w, c in other._terms.items():
            s = merged.get(w)
            s = c if s is None else s + c
            if s:
                merged[w] = s
            else:
                merged.pop(w, None)
        return Element(self.presentation, merged)

    def __sub__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return Element(self.presentation,
                       {w: -c for w, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, QLaurent)):
            return self.scale(other)
        if not isinstance(other, Element):
            return NotImplemented
        self._check_mate(other)
        prod: dict[tuple[int, ...], QLaurent] = {}
        for w1, c1 in self._terms.items():
            for w2, c2 in other._terms.items():
                w = w1 + w2
                c = c1 * c2
                s = prod.get(w)
                s = c if s is None else s + c
                if s:
                    prod[w] = s
                else:
                    prod.pop(w, None)
        return Element(self.presentation, prod)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, QLaurent)):
            return self.scale(other)
        return NotImplemented

    def scale(self, scalar) -> "Element":
        if not isinstance(scalar, QLaurent):
            scalar = QLaurent.rational(scalar)
        return Element(self.presentation,
                       {w: c * scalar for w, c in self._terms.items()})

    def star(self) -> "Element":
        """Involution: reverse each word, star each letter, conjugate scalars."""
        p = self.presentation
        out: dict[tuple[int, ...], QLaurent] = {}
        for w, c in self._terms.items():
            sw = tuple(p._star_idx[i] for i in reversed(w))
            s = out.get(sw)
            cc = c.conjugate()
            s = cc if s is None else s + cc
            if s:
                out[sw] = s
            else:
                out.pop(sw, None)
        return Element(p, out)

    def normal_form(self) -> "Element":
        return self.presentation.normal_form(self)

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return (self.presentation is other.presentation
                and self._terms == other._terms)

    def __hash__(self):
        return hash((id(self.presentation),
                     tuple(sorted(self._terms.items(),
                                  key=lambda kv: kv[0]))))

    def __str__(self):
        return self.presentation.format_element(self)

    def __repr__(self):
        return f"<{self.presentation.name}: {self}>"


class Rule:
    """One oriented rewriting rule left -> sum of smaller words."""

    __slots__ = ("left", "right", "label")

    def __init__(self, left: tuple[int, ...],
                 right: dict[tuple[int, ...], QLaurent], label: str):
        self.left = left
        self.right = {w: c for w, c in right.items() if c}
        self.label = label


class AlgebraPresentation:
    """A named generating set, involution table, and oriented rule list.

    The monomial order is degree-lexicographic with generator precedence
    given by position in ``generators``.  Every rule must be strictly
    decreasing in that order; the constructor enforces this, which is
    what guarantees termination of normal_form.
    """

    def __init__(self, name: str, generators: tuple[str, ...],
                 star_map: dict[str, str],
                 rules_spec, params: dict | None = None,
                 step_budget: int = DEFAULT_STEP_BUDGET):
        self.name = name
        self.generators = tuple(generators)
        self.params = dict(params or {})
        self.step_budget = step_budget
        self._index = {g: i for i, g in enumerate(self.generators)}
        if len(self._index) != len(self.generators):
            raise PresentationError("duplicate generator name")
        for g, h in star_map.items():
            if g not in self._index or h not in self._index:
                raise PresentationError(f"star table mentions unknown generator {g!r}")
        self._star_idx = tuple(self._index[star_map[g]] for g in self.generators)

        rules = []
        for left_names, right_names in rules_spec:
            left = tuple(self._index[g] for g in left_names)
            right = {tuple(self._index[g] for g in w): c
                     for w, c in right_names.items() if c}
            label = self.format_word(left)
            lk = self.deglex_key(left)
            for w in right:
                if self.deglex_key(w) >= lk:
                    raise PresentationError(
                        f"rule {label} is not order-decreasing at {self.format_word(w)}")
            rules.append(Rule(left, right, label))
        self.rules = tuple(rules)
        # rules bucketed by first letter for the matcher
        self._rules_by_first: dict[int, list[Rule]] = {}
        for r in self.rules:
            self._rules_by_first.setdefault(r.left[0], []).append(r)

    # -- basic constructors -------------------------------------------------

    def gen_index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise PresentationError(
                f"unknown generator {name!r} for {self.name}") from None

    def zero(self) -> Element:
        return Element(self, {})

    def one(self) -> Element:
        return Element(self, {(): QLaurent.one()})

    def gen(self, name: str) -> Element:
        return Element(self, {(self.gen_index(name),): QLaurent.one()})

    def word(self, *gen_names: str) -> Element:
        w = tuple(self.gen_index(n) for n in gen_names)
        return Element(self, {w: QLaurent.one()})

    def element_from(self, named_terms: dict[tuple[str, ...], QLaurent]) -> Element:
        terms = {tuple(self.gen_index(n) for n in w): c
                 for w, c in named_terms.items()}
        return Element(self, terms)

    def star_name(self, name: str) -> str:
        return self.generators[self._star_idx[self.gen_index(name)]]

    # -- monomial order and rewriting --------------------------------------

    def deglex_key(self, word: tuple[int, ...]):
        return (len(word), word)

    def _find_match(self, word: tuple[int, ...]):
        n = len(word)
        for pos in range(n):
            bucket = self._rules_by_first.get(word[pos])
            if not bucket:
                continue
            for rule in bucket:
                k = len(rule.left)
                if pos + k <= n and word[pos:pos + k] == rule.left:
                    return pos, rule
        return None

    def normal_form(self, x: Element) -> Element:
        """Rewrite x until no rule applies.

        Deterministic strategy: leftmost match, first matching rule.
        Raises RewriteBudgetError past the step budget, which signals an
        internal error because every built-in system terminates quickly.
        """
        if x.presentation is not self:
            raise PresentationError("element belongs to a different presentation")
        budget = self.step_budget
        result: dict[tuple[int, ...], QLaurent] = {}
        stack = list(x._terms.items())
        while stack:
            word, coeff = stack.pop()
            if not coeff:
                continue
            m = self._find_match(word)
            if m is None:
                s = result.get(word)
                s = coeff if s is None else s + coeff
                if s:
                    result[word] = s
                else:
                    result.pop(word, None)
                continue
            budget -= 1
            if budget < 0:
                raise RewriteBudgetError(
                    f"normal form in {self.name} exceeded "
                    f"{self.step_budget} rewrite steps")
            pos, rule = m
            prefix = word[:pos]
            suffix = word[pos + len(rule.left):]
            for rword, rcoeff in rule.right.items():
                stack.append((prefix + rword + suffix, coeff * rcoeff))
        return Element(self, result)

    def is_normal_word(self, word) -> bool:
        """True when no rule's left side occurs as a subword."""
        if word and isinstance(word[0], str):
            word = tuple(self.gen_index(n) for n in word)
        return self._find_match(tuple(word)) is None

    def in_declared_basis(self, word) -> bool:
        """Membership in the declared normal-form monomial family."""
        if word and isinstance(word[0], str):
            word = tuple(self.gen_index(n) for n in word)
        return self._basis_predicate(tuple(word))

    def check_star_closure(self) -> bool:
        """Each rule's star reduces to zero, so the ideal is *-closed."""
        for rule in self.rules:
            lhs = Element(self, {rule.left: QLaurent.one()})
            rhs = Element(self, dict(rule.right))
            if not self.normal_form((lhs - rhs).star()).is_zero():
                return False
        return True

    # -- formatting and parsing ---------------------------------------------

    def format_word(self, word: tuple[int, ...]) -> str:
        if not word:
            return "1"
        pieces = []
        i = 0
        while i < len(word):
            j = i
            while j < len(word) and word[j] == word[i]:
                j += 1
            g = self.generators[word[i]]
            pieces.append(g if j - i == 1 else f"{g}^{j - i}")
            i = j
        return " ".join(pieces)

    def format_element(self, x: Element) -> str:
        if x.is_zero():
            return "0"
        chunks = []
        for w in sorted(x._terms, key=self.deglex_key):
            c = x._terms[w]
            wtxt = self.format_word(w)
            body, neg = _format_term(c, wtxt)
            if not chunks:
                chunks.append(f"-{body}" if neg else body)
            else:
                chunks.append(f"- {body}" if neg else f"+ {body}")
        return " ".join(chunks)

    def parse(self, text: str) -> Element:
        """Parse the small expression grammar.

        Products are juxtaposition ("K L" or "KL"), the involution is a
        suffix prime or star ("L'" or "L*"), integer powers use "^", and
        scalar factors look like 3, 3/2, q^-4 or (3/2)q^-4.
        """
        return _ExprParser(self, text).parse()

    def __repr__(self):
        return f"AlgebraPresentation({self.name!r}, generators={self.generators})"

    # -- declared bases ------------------------------------------------------

    def _basis_predicate(self, word: tuple[int, ...]) -> bool:
        name = self.name
        gens = self.generators
        letters = [gens[i] for i in word]
        if name == "sphere":
            return _run_basis(letters, "K", ("L", "L*"))
        if name == "disc":
            return _two_block(letters, "x", "x*")
        if name == "rp2":
            i = 0
            while i < len(letters) and letters[i] == "P":
                i += 1
            rest = letters[i:]
            if not rest:
                return True
            if rest[-1] == "T":
                body, tail = rest[:-1], "R"
            elif rest[-1] == "T*":
                body, tail = rest[:-1], "R*"
            elif rest[0] == "R":
                body, tail = rest, "R"
            elif rest[0] == "R*":
                body, tail = rest, "R*"
            else:
                return False
            return all(ch == tail for ch in body)
        if name == "suq2_mod_b":
            i = 0
            while i < len(letters) and letters[i] == "a":
                i += 1
            j = i
            while j < len(letters) and letters[j] == "a*":
                j += 1
            rest = letters[j:]
            return rest == [] or rest == ["b"]
        raise PresentationError(f"no declared basis for {name}")


def _two_block(letters, first, second) -> bool:
    i = 0
    while i < len(letters) and letters[i] == first:
        i += 1
    return all(ch == second for ch in letters[i:])


def _run_basis(letters, head, tails) -> bool:
    i = 0
    while i < len(letters) and letters[i] == head:
        i += 1
    rest = letters[i:]
    if not rest:
        return True
    return any(all(ch == t for ch in rest) for t in tails)


def _format_term(coeff: QLaurent, word_text: str) -> tuple[str, bool]:
    """Render one term; returns (body, is_negative)."""
    items = coeff.items()
    if len(items) == 1:
        e, c = items[0]
        neg = c < 0
        mag = abs(c)
        if e == 0:
            scalar = "" if mag == 1 else str(mag) if mag.denominator == 1 else f"({mag})"
        else:
            qpart = "q" if e == 1 else f"q^{e}"
            if mag == 1:
                scalar = qpart
            elif mag.denominator == 1:
                scalar = f"{mag}{qpart}"
            else:
                scalar = f"({mag}){qpart}"
        if word_text == "1":
            body = scalar if scalar else str(mag)
        else:
            body = f"{scalar} {word_text}" if scalar else word_text
        return body, neg
    # multi-term coefficient: parenthesise as a whole
    body = f"({coeff})"
    if word_text != "1":
        body = f"{body} {word_text}"
    return body, False


# -- expression parser -------------------------------------------------------

class _ExprParser:
    def __init__(self, presentation: AlgebraPresentation, text: str):
        self.p = presentation
        self.text = text
        self.pos = 0

    def parse(self) -> Element:
        value = self._expr()
        self._skip_ws()
        if self.pos != len(self.text):
            raise ExpressionError(
                f"unexpected input at position {self.pos}: "
                f"{self.text[self.pos:self.pos + 8]!r}")
        return value

    def _skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _peek(self):
        self._skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def _expr(self) -> Element:
        sign = 1
        ch = self._peek()
        if ch in "+-":
            self.pos += 1
            sign = -1 if ch == "-" else 1
        total = self._term().scale(sign)
        while True:
            ch = self._peek()
            if ch == "+":
                self.pos += 1
                total = total + self._term()
            elif ch == "-":
                self.pos += 1
                total = total - self._term()
            else:
                return total

    def _term(self) -> Element:
        value = self._factor()
        while True:
            ch = self._peek()
            if ch and (ch.isalnum() or ch == "("):
                value = value * self._factor()
            else:
                return value

    def _factor(self) -> Element:
        base = self._primary()
        if self._peek() == "^":
            self.pos += 1
            exp = self._signed_int()
            if exp < 0:
                raise ExpressionError("negative powers are only allowed on q")
            out = self.p.one()
            for _ in range(exp):
                out = out * base
            return out
        return base

    def _primary(self) -> Element:
        ch = self._peek()
        if not ch:
            raise ExpressionError("unexpected end of expression")
        if ch == "(":
            self.pos += 1
            inner = self._expr()
            if self._peek() != ")":
                raise ExpressionError("missing closing parenthesis")
            self.pos += 1
            return inner
        if ch.isdigit():
            return self.p.one().scale(QLaurent.rational(self._rational()))
        if ch == "q":
            self.pos += 1
            exp = 1
            if self._peek() == "^":
                self.pos += 1
                exp = self._signed_int()
            return self.p.one().scale(QLaurent.q_power(exp))
        if ch.isalpha():
            self.pos += 1
            name = ch
            if self.pos < len(self.text) and self.text[self.pos] in "*'":
                name = ch + "*"
                self.pos += 1
            if name not in self.p._index:
                raise ExpressionError(
                    f"unknown generator {name!r} for {self.p.name}")
            return self.p.gen(name)
        raise ExpressionError(f"unexpected character {ch!r} at position {self.pos}")

    def _signed_int(self) -> int:
        self._skip_ws()
        sign = 1
        if self.pos < len(self.text) and self.text[self.pos] == "-":
            sign = -1
            self.pos += 1
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise ExpressionError(f"expected an integer at position {start}")
        return sign * int(self.text[start:self.pos])

    def _rational(self) -> Fraction:
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        num = int(self.text[start:self.pos])
        if self.pos < len(self.text) and self.text[self.pos] == "/":
            self.pos += 1
            dstart = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            if dstart == self.pos:
                raise ExpressionError("expected a denominator after '/'")
            den = int(self.text[dstart:self.pos])
            if den == 0:
                raise ExpressionError("zero denominator")
            return Fraction(num, den)
        return Fraction(num)


# -- built-in presentations ----------------------------------------------------

def _q(e, c=1):
    return QLaurent.q_power(e, c)


def _r(c):
    return QLaurent.rational(c)


def _sphere_rules(s: Fraction):
    s2 = s * s
    return [
        (("L", "K"), {("K", "L"): _q(2)}),
        (("L*", "K"), {("K", "L*"): _q(-2)}),
        (("L*", "L"), {(): _r(s2), ("K",): _r(1 - s2), ("K", "K"): _r(-1)}),
        (("L", "L*"), {(): _r(s2), ("K",): _q(2, 1 - s2), ("K", "K"): _q(4, -1)}),
    ]


_DISC_RULES = [
    (("x*", "x"), {("x", "x*"): _q(1), (): QLaurent({0: 1, 1: -1})}),
]

# Quantum real projective space.  The commutation rules between T-type and
# R-type letters are oriented so that irreducible words put the P block
# first, then a pure R or R* block, then an optional trailing T or T*,
# matching the monomial basis below.  That forces the precedence
# P < R < R* < T < T* in the degree-lex order.
_RP2_RULES = [
    (("T", "P"), {("P", "T"): _q(4)}),
    (("T*", "P"), {("P", "T*"): _q(-4)}),
    (("R", "P"), {("P", "R"): _q(8)}),
    (("R*", "P"), {("P", "R*"): _q(-8)}),
    (("T", "R"), {("R", "T"): _q(-4)}),
    (("T*", "R*"), {("R*", "T*"): _q(4)}),
    (("T", "T"), {("P", "R"): _q(2)}),
    (("T*", "T*"), {("P", "R*"): _q(-6)}),
    (("R", "T*"), {("P", "T"): _q(10, -1), ("T",): _q(2)}),
    (("R*", "T"), {("P", "T*"): _q(-6, -1), ("T*",): _q(-2)}),
    (("T", "R*"), {("P", "T*"): _q(6, -1), ("T*",): _q(2)}),
    (("T*", "R"), {("P", "T"): _q(-2, -1), ("T",): _q(-2)}),
    (("T", "T*"), {("P", "P"): _q(4, -1), ("P",): _r(1)}),
    (("T*", "T"), {("P", "P"): _q(-4, -1), ("P",): _q(-4)}),
    (("R", "R*"), {("P", "P"): _q(12), ("P",): QLaurent({4: -1, 8: -1}), (): _r(1)}),
    (("R*", "R"), {("P", "P"): _q(-4), ("P",): QLaurent({0: -1, -4: -1}), (): _r(1)}),
]

# SU_{q^2}(2) with b made self-adjoint: a b = q^2 b a together with
# a* a + q^-4 b^2 = 1 and a a* + b^2 = 1, written as four oriented rules
# with right sides already in normal form.
_SUQ2_RULES = [
    (("b", "a"), {("a", "b"): _q(-2)}),
    (("b", "a*"), {("a*", "b"): _q(2)}),
    (("a*", "a"), {("a", "a*"): _q(-4), (): QLaurent({0: 1, -4: -1})}),
    (("b", "b"), {(): _r(1), ("a", "a*"): _r(-1)}),
]


def presentation(name: str, s=None) -> AlgebraPresentation:
    """Return the named built-in presentation.

    ``s`` is only meaningful for the sphere and must be a rational in
    [0, 1]; the default is 1.
    """
    if name == "sphere":
        s = Fraction(1) if s is None else Fraction(s)
        if not 0 <= s <= 1:
            raise PresentationError("sphere parameter s must lie in [0, 1]")
        return _cached_presentation(name, (s.numerator, s.denominator))
    if s is not None:
        raise PresentationError(f"presentation {name!r} takes no parameter s")
    if name in ("disc", "rp2", "suq2_mod_b"):
        return _cached_presentation(name, None)
    raise PresentationError(f"unknown presentation {name!r}")


@lru_cache(maxsize=None)
def _cached_presentation(name: str, s_key) -> AlgebraPresentation:
    if name == "sphere":
        s = Fraction(*s_key)
        return AlgebraPresentation(
            "sphere", ("K", "L", "L*"),
            {"K": "K", "L": "L*", "L*": "L"},
            _sphere_rules(s), params={"s": s})
    if name == "disc":
        return AlgebraPresentation(
            "disc", ("x", "x*"), {"x": "x*", "x*": "x"}, _DISC_RULES)
    if name == "rp2":
        return AlgebraPresentation(
            "rp2", ("P", "R", "R*", "T", "T*"),
            {"P": "P", "R": "R*", "R*": "R", "T": "T*", "T*": "T"},
            _RP2_RULES)
    if name == "suq2_mod_b":
        return AlgebraPresentation(
            "suq2_mod_b", ("a", "a*", "b"),
            {"a": "a*", "a*": "a", "b": "b"},
            _SUQ2_RULES)
    raise PresentationError(f"unknown presentation {name!r}")


def normal_form(x: Element) -> Element:
    return x.presentation.normal_form(x)


# -- generator maps ------------------------------------------------------------

class GeneratorMap:
    """A *-algebra map defined on generators.

    ``images`` gives the image of each unstarred generator; images of
    starred generators are filled in through the target involution.  An
    optional exponent scale composes with a substitution q -> q^scale on
    coefficients, used when source and target deformation parameters
    differ by a fixed power.
    """

    def __init__(self, name: str, source: AlgebraPresentation,
                 target: AlgebraPresentation,
                 images: dict[str, Element], q_scale: int = 1):
        self.name = name
        self.source = source
        self.target = target
        self.q_scale = q_scale
        by_index: dict[int, Element] = {}
        for gname, img in images.items():
            if img.presentation is not target:
                raise PresentationError(
                    f"image of {gname!r} lives in the wrong presentation")
            by_index[source.gen_index(gname)] = img
        for i, g in enumerate(source.generators):
            if i in by_index:
                continue
            j = source._star_idx[i]
            if j in by_index:
                by_index[i] = target.normal_form(by_index[j].star())
            else:
                raise PresentationError(f"no image given for generator {g!r}")
        self.images = by_index
        self.star_compatible = all(
            target.normal_form(
                self.images[source._star_idx[i]] - self.images[i].star()
            ).is_zero()
            for i in range(len(source.generators)))

    def apply(self, x: Element) -> Element:
        """Image of x, reduced to normal form in the target."""
        if x.presentation is not self.source:
            raise PresentationError("element does not belong to the source")
        total = self.target.zero()
        for word, coeff in x._terms.items():
            if self.q_scale != 1:
                coeff = coeff.scale_exponents(self.q_scale)
            prod = self.target.one().scale(coeff)
            for letter in word:
                prod = prod * self.images[letter]
            total = total + prod
        return self.target.normal_form(total)

    def verify(self) -> "MorphismReport":
        """Reduce the image of every source relation; all must vanish."""
        entries = []
        for rule in self.source.rules:
            lhs = Element(self.source, {rule.left: QLaurent.one()})
            rhs = Element(self.source, dict(rule.right))
            residual = self.target.normal_form(self.apply(lhs) - self.apply(rhs))
            entries.append((rule.label, residual))
        return MorphismReport(self.name, tuple(entries), self.star_compatible)

    def is_involution(self) -> bool:
        """apply two times fixes every generator (source must equal target)."""
        if self.source is not self.target:
            return False
        for g in self.source.generators:
            x = self.source.gen(g)
            if not self.source.normal_form(self.apply(self.apply(x)) - x).is_zero():
                return False
        return True


class MorphismReport:
    """Per-relation residuals from a generator-map verification."""

    __slots__ = ("name", "entries", "star_compatible")

    def __init__(self, name, entries, star_compatible):
        self.name = name
        self.entries = entries
        self.star_compatible = star_compatible

    @property
    def ok(self) -> bool:
        return self.star_compatible and all(r.is_zero() for _, r in self.entries)

    def __repr__(self):
        state = "ok" if self.ok else "FAILED"
        return f"<MorphismReport {self.name}: {state}>"


BUILTIN_MORPHISMS = ("F", "r1", "r2", "rp2-inclusion", "disc-inclusion")


@lru_cache(maxsize=None)
def builtin_morphism(name: str) -> GeneratorMap:
    """Named generator maps between the built-in presentations.

    F               sphere(s=1) -> suq2_mod_b, K -> q^-2 b, L -> a
    r1, r2          the order-two automorphisms of sphere(s=1),
                    r1: K -> -K, L -> L and r2: K -> -K, L -> -L
    rp2-inclusion   rp2 -> sphere(s=1), P -> K^2, R -> L^2, T -> K L
    disc-inclusion  disc -> sphere(s=1), x -> L*, with the disc parameter
                    equal to the fourth power of the sphere parameter
                    (exactly the subalgebra fixed by r1)
    """
    sphere = presentation("sphere")
    if name == "F":
        suq2 = presentation("suq2_mod_b")
        return GeneratorMap("F", sphere, suq2, {
            "K": suq2.gen("b").scale(QLaurent.q_power(-2)),
            "L": suq2.gen("a"),
        })
    if name == "r1":
        return GeneratorMap("r1", sphere, sphere,
                            {"K": -sphere.gen("K"), "L": sphere.gen("L")})
    if name == "r2":
        return GeneratorMap("r2", sphere, sphere,
                            {"K": -sphere.gen("K"), "L": -sphere.gen("L")})
    if name == "rp2-inclusion":
        rp2 = presentation("rp2")
        return GeneratorMap("rp2-inclusion", rp2, sphere, {
            "P": sphere.word("K", "K"),
            "R": sphere.word("L", "L"),
            "T": sphere.word("K", "L"),
        })
    if name == "disc-inclusion":
        disc = presentation("disc")
        return GeneratorMap("disc-inclusion", disc, sphere,
                            {"x": sphere.gen("L*")}, q_scale=4)
    raise PresentationError(f"unknown morphism {name!r}")


def is_fixed(auto: GeneratorMap, x: Element) -> bool:
    """True when the automorphism fixes x in the quotient algebra."""
    if auto.source is not auto.target:
        raise PresentationError("fixed points need an endomorphism")
    return auto.source.normal_form(auto.apply(x) - x).is_zero()


def param_c_to_s(c):
    """Convert the alternative sphere parameter c >= 0 (or inf) to s.

    Uses s = 2 sqrt(c) / (1 + sqrt(1 + 4 c)), the inverse of
    c = (1/s - s)^-2.  Returns an exact Fraction when both square roots
    are rational, otherwise a float.  c = inf maps to s = 1.
    """
    if c == math.inf:
        return Fraction(1)
    c = Fraction(c)
    if c < 0:
        raise ValueError("c must be nonnegative")
    if c == 0:
        return Fraction(0)
    root_c = _exact_sqrt(c)
    root_1_4c = _exact_sqrt(1 + 4 * c)
    if root_c is not None and root_1_4c is not None:
        return 2 * root_c / (1 + root_1_4c)
    cf = float(c)
    return 2.0 * math.sqrt(cf) / (1.0 + math.sqrt(1.0 + 4.0 * cf))


def _exact_sqrt(value: Fraction):
    num = math.isqrt(value.numerator)
    den = math.isqrt(value.denominator)
    if num * num == value.numerator and den * den == value.denominator:
        return Fraction(num, den)
    return None


def check_local_confluence(p: AlgebraPresentation) -> list[tuple[str, Element]]:
    """All critical pairs of the rule system, with their nf differences.

    Returns one (overlap word, nf(reduct1) - nf(reduct2)) entry per
    unresolved overlap; an empty list plus rule termination (enforced at
    construction) proves the rewriting system confluent, so normal forms
    are unique and the declared basis really is a basis.
    """
    out = []
    for r1 in p.rules:
        for r2 in p.rules:
            l1, l2 = r1.left, r2.left
            # proper suffix of l1 equals proper prefix of l2
            for o in range(1, min(len(l1), len(l2))):
                if l1[len(l1) - o:] != l2[:o]:
                    continue
                tail = l2[o:]
                red1 = {}
                for w, c in r1.right.items():
                    key = w + tail
                    red1[key] = red1.get(key, QLaurent.zero()) + c
                head = l1[:len(l1) - o]
                red2 = {}
                for w, c in r2.right.items():
                    key = head + w
                    red2[key] = red2.get(key, QLaurent.zero()) + c
                diff = p.normal_form(Element(p, red1)) - p.normal_form(Element(p, red2))
                if not diff.is_zero():
                    out.append((p.format_word(l1 + tail), diff))
            # l2 strictly inside l1
            if len(l2) < len(l1):
                for pos in range(len(l1) - len(l2) + 1):
                    if l1[pos:pos + len(l2)] != l2:
                        continue
                    red1 = dict(r1.right)
                    red2 = {}
                    for w, c in r2.right.items():
                        key = l1[:pos] + w + l1[pos + len(l2):]
                        red2[key] = red2.get(key, QLaurent.zero()) + c
                    diff = (p.normal_form(Element(p, red1))
                            - p.normal_form(Element(p, red2)))
                    if not diff.is_zero():
                        out.append((p.format_word(l1), diff))
    return out


def even_generator_count(x: Element, gen_name: str) -> bool:
    """Every monomial of nf(x) uses the generator an even number of times."""
    p = x.presentation
    idx = p.gen_index(gen_name)
    nf = p.normal_form(x)
    return all(sum(1 for i in w if i == idx) % 2 == 0 for w in nf._terms)


def even_word_length(x: Element) -> bool:
    """Every monomial of nf(x) has even total degree."""
    nf = x.presentation.normal_form(x)
    return all(len(w) % 2 == 0 for w in nf._terms)


def random_element(p: AlgebraPresentation, rng, max_terms: int = 4,
                   max_degree: int = 6, coeff_span: int = 5,
                   exponent_span: int = 2) -> Element:
    """Seeded random element, used by the batch verification suites."""
    terms: dict[tuple[int, ...], QLaurent] = {}
    n_gens = len(p.generators)
    for _ in range(rng.randint(1, max_terms)):
        length = rng.randint(0, max_degree)
        word = tuple(rng.randrange(n_gens) for _ in range(length))
        num = rng.randint(-coeff_span, coeff_span)
        den = rng.randint(1, 4)
        exp = rng.randint(-exponent_span, exponent_span)
        coeff = QLaurent.q_power(exp, Fraction(num, den))
        prev = terms.get(word)
        terms[word] = coeff if prev is None else prev + coeff
    return Element(p, terms)

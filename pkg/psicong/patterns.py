"""
Trit Word Patterns
==================

The digit rules are case lists of word sets such as {0,1}^* 0 1 written
most significant trit first. This module compiles a small pattern
language into a Thompson NFA and runs it as a state set, one pass over
the word with no backtracking:

    0 1 2        a literal trit
    [01]  .      a class of trits, any trit
    ( )          grouping
    * + ?        repetition
    {n} {n,m}    counted repetition
    |            alternation

Words are matched in full. Leading zeros of a base-3 expansion may be
added or dropped freely, so every compiled pattern is anchored after an
implicit 0* prefix and accepts_int() puts a few explicit zeros in front
of the expansion of n, which lets a pattern begin with 0.

You'll learn:
- Recursive-descent parsing of a tiny regular language
- Thompson's construction and state-set simulation
"""

import logging
from dataclasses import dataclass, field
from functools import lru_cache

log = logging.getLogger(__name__)

ALPHABET = frozenset("012")

# explicit leading zeros put in front of a word before matching
PAD = 4


class PatternSyntaxError(ValueError):
    pass


@dataclass
class _State:
    chars: frozenset = None          # None for split/match states
    out: list = field(default_factory=list)
    match: bool = False


@dataclass
class _Frag:
    start: int
    ends: list                       # (state, slot) pairs still dangling


class _Builder:
    def __init__(self):
        self.states = []

    def new(self, chars=None, match=False):
        self.states.append(_State(chars, [], match))
        return len(self.states) - 1

    def patch(self, ends, target):
        for s, slot in ends:
            out = self.states[s].out
            while len(out) <= slot:
                out.append(None)
            out[slot] = target

    def char(self, chars):
        s = self.new(frozenset(chars))
        return _Frag(s, [(s, 0)])

    def empty(self):
        s = self.new()
        return _Frag(s, [(s, 0)])

    def concat(self, a, b):
        self.patch(a.ends, b.start)
        return _Frag(a.start, b.ends)

    def alt(self, a, b):
        s = self.new()
        self.states[s].out = [a.start, b.start]
        return _Frag(s, a.ends + b.ends)

    def star(self, a):
        s = self.new()
        self.states[s].out = [a.start, None]
        self.patch(a.ends, s)
        return _Frag(s, [(s, 1)])

    def plus(self, a):
        s = self.new()
        self.states[s].out = [a.start, None]
        self.patch(a.ends, s)
        return _Frag(a.start, [(s, 1)])

    def optional(self, a):
        s = self.new()
        self.states[s].out = [a.start, None]
        return _Frag(s, a.ends + [(s, 1)])


class _Parser:
    """alt := seq ('|' seq)*; seq := item*; item := unit postfix*

    Produces a small tree of tuples: ("chars", set), ("cat", parts),
    ("alt", a, b), ("star"|"plus"|"opt", a), ("rep", a, lo, hi).
    """

    def __init__(self, text):
        self.text = "".join(text.split())
        self.pos = 0

    def peek(self):
        return self.text[self.pos] if self.pos < len(self.text) else None

    def take(self, ch=None):
        c = self.peek()
        if c is None or (ch is not None and c != ch):
            raise PatternSyntaxError(f"expected {ch or 'a symbol'} at {self.pos} in {self.text!r}")
        self.pos += 1
        return c

    def parse(self):
        node = self.alternation()
        if self.peek() is not None:
            raise PatternSyntaxError(f"unexpected {self.peek()!r} at {self.pos} in {self.text!r}")
        return node

    def alternation(self):
        node = self.sequence()
        while self.peek() == "|":
            self.take("|")
            node = ("alt", node, self.sequence())
        return node

    def sequence(self):
        parts = []
        while self.peek() not in (None, "|", ")"):
            parts.append(self.item())
        return ("cat", parts)

    def item(self):
        node = self.unit()
        while self.peek() in ("*", "+", "?", "{"):
            op = self.take()
            if op == "*":
                node = ("star", node)
            elif op == "+":
                node = ("plus", node)
            elif op == "?":
                node = ("opt", node)
            else:
                lo, hi = self.counts()
                node = ("rep", node, lo, hi)
        return node

    def counts(self):
        body = ""
        while self.peek() not in ("}", None):
            body += self.take()
        self.take("}")
        try:
            if "," in body:
                lo, hi = body.split(",")
                lo, hi = int(lo), (int(hi) if hi else None)
            else:
                lo = hi = int(body)
        except ValueError:
            raise PatternSyntaxError(f"bad repetition count {{{body}}} in {self.text!r}") from None
        if hi is not None and hi < lo:
            raise PatternSyntaxError(f"empty repetition range {{{body}}}")
        return lo, hi

    def unit(self):
        c = self.peek()
        if c == "(":
            self.take("(")
            node = self.alternation()
            self.take(")")
            return node
        if c == "[":
            self.take("[")
            chars = set()
            while self.peek() != "]":
                d = self.take()
                if d not in ALPHABET:
                    raise PatternSyntaxError(f"class member {d!r} is not a trit")
                chars.add(d)
            self.take("]")
            if not chars:
                raise PatternSyntaxError("empty class")
            return ("chars", frozenset(chars))
        if c == ".":
            self.take()
            return ("chars", ALPHABET)
        if c is not None and c in ALPHABET:
            return ("chars", frozenset(self.take()))
        raise PatternSyntaxError(f"unexpected {c!r} at {self.pos} in {self.text!r}")


def _build(b, node):
    """Thompson construction; counted repeats get a fresh copy per use"""
    kind = node[0]
    if kind == "chars":
        return b.char(node[1])
    if kind == "cat":
        frag = None
        for part in node[1]:
            nxt = _build(b, part)
            frag = nxt if frag is None else b.concat(frag, nxt)
        return frag if frag is not None else b.empty()
    if kind == "alt":
        return b.alt(_build(b, node[1]), _build(b, node[2]))
    if kind == "star":
        return b.star(_build(b, node[1]))
    if kind == "plus":
        return b.plus(_build(b, node[1]))
    if kind == "opt":
        return b.optional(_build(b, node[1]))
    _, sub, lo, hi = node
    parts = [sub] * lo
    if hi is None:
        parts.append(("star", sub))
    else:
        parts += [("opt", sub)] * (hi - lo)
    return _build(b, ("cat", parts))


class TritPattern:
    """A compiled word pattern over {0,1,2}"""

    def __init__(self, text, pad=True):
        self.text = text
        b = _Builder()
        frag = _build(b, _Parser(text).parse())
        if pad:
            frag = b.concat(b.star(b.char("0")), frag)
        b.patch(frag.ends, b.new(match=True))
        self.states = b.states
        self.start = frag.start
        log.debug("compiled %r into %d NFA states", text, len(self.states))

    def _closure(self, seeds):
        seen = set()
        stack = list(seeds)
        while stack:
            s = stack.pop()
            if s is None or s in seen:
                continue
            seen.add(s)
            st = self.states[s]
            if st.chars is None and not st.match:
                stack.extend(st.out)
        return seen

    def accepts(self, word):
        """Full match of a most-significant-first trit word"""
        current = self._closure([self.start])
        for ch in word:
            nxt = []
            for s in current:
                st = self.states[s]
                if st.chars is not None and ch in st.chars:
                    nxt.append(st.out[0])
            current = self._closure(nxt)
            if not current:
                return False
        return any(self.states[s].match for s in current)

    def accepts_int(self, n):
        return self.accepts(padded_word(n))

    def __repr__(self):
        return f"TritPattern({self.text!r})"


@lru_cache(maxsize=None)
def compile_pattern(text, pad=True):
    return TritPattern(text, pad)


def to_word(n):
    """Canonical base-3 expansion of n, most significant first ('' for 0)"""
    if n < 0:
        raise ValueError("n must be non-negative")
    out = []
    while n:
        n, d = divmod(n, 3)
        out.append(str(d))
    return "".join(reversed(out))


def padded_word(n, pad=PAD):
    """to_word(n) behind a few explicit zeros, for patterns that start with 0"""
    return "0" * pad + to_word(n)


def rep_mod(unit, r, m=3, least=0):
    """Pattern for unit repeated c times with c = r (mod m) and c >= least"""
    c0 = r % m
    if c0 < least:
        c0 += m * -(-(least - c0) // m)
    head = f"({unit}){{{c0}}}" if c0 else ""
    return f"{head}(({unit}){{{m}}})*"


def matches_any(patterns, word):
    return any(compile_pattern(p).accepts(word) for p in patterns)

"""Generators, words and presentations of the cactus groups J_n and J_n^S.

Every generator s_{p,q} is an involution, so a word is just a sequence of
generators; inverse decorations in input are accepted and dropped.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Sequence

MAX_DEGREE = 9


class WordSyntaxError(ValueError):
    """Raised by :func:`parse_word` on malformed input."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


@dataclass(frozen=True, order=True)
class Generator:
    p: int
    q: int

    def __post_init__(self):
        if not (1 <= self.p < self.q <= MAX_DEGREE):
            raise ValueError(f"invalid generator indices p={self.p}, q={self.q}")

    def __str__(self):
        return f"s{self.p}{self.q}"

    __repr__ = __str__

    @property
    def size(self) -> int:
        return self.q - self.p + 1

    def interval(self) -> range:
        return range(self.p, self.q + 1)


def gen(name: str) -> Generator:
    """``gen("s13")`` -> Generator(1, 3)."""
    m = re.fullmatch(r"s(\d)(\d)", name.strip())
    if m is None:
        raise ValueError(f"not a generator: {name!r}")
    return Generator(int(m.group(1)), int(m.group(2)))


@dataclass(frozen=True)
class Word:
    letters: tuple[Generator, ...]
    degree: int

    def __post_init__(self):
        if not (2 <= self.degree <= MAX_DEGREE):
            raise ValueError(f"degree {self.degree} out of range")
        letters = tuple(self.letters)
        for g in letters:
            if g.q > self.degree:
                raise ValueError(f"{g} does not exist in degree {self.degree}")
        object.__setattr__(self, "letters", letters)

    @classmethod
    def identity(cls, degree: int) -> Word:
        return cls((), degree)

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, item):
        if isinstance(item, slice):
            return Word(self.letters[item], self.degree)
        return self.letters[item]

    def __mul__(self, other: Word) -> Word:
        return Word(self.letters + other.letters, max(self.degree, other.degree))

    def __str__(self):
        return " ".join(str(g) for g in self.letters)

    def __repr__(self):
        return f"Word({str(self)!r}, degree={self.degree})"

    def count(self, g: Generator) -> int:
        return self.letters.count(g)


_TOKEN = re.compile(r"s(\d)(\d)(\^-1)?")


def parse_word(text: str, degree: int) -> Word:
    """Parse tokens ``s<p><q>`` (optional ``^-1``) separated by spaces or ``*``."""
    letters = []
    i = 0
    n = len(text)
    expect_token = True
    while i < n:
        ch = text[i]
        if ch.isspace() or ch == "*":
            expect_token = True
            i += 1
            continue
        if not expect_token:
            raise WordSyntaxError("missing separator", i)
        m = _TOKEN.match(text, i)
        if m is None:
            raise WordSyntaxError(f"unexpected {ch!r}", i)
        p, q = int(m.group(1)), int(m.group(2))
        if not p < q:
            raise WordSyntaxError(f"generator s{p}{q} needs p < q", i)
        if q > degree or p < 1:
            raise WordSyntaxError(f"index out of range for degree {degree}", i)
        letters.append(Generator(p, q))
        i = m.end()
        expect_token = False
    return Word(tuple(letters), degree)


def free_reduce(w: Word) -> Word:
    """Cancel adjacent equal letters until none remain."""
    out: list[Generator] = []
    for g in w.letters:
        if out and out[-1] == g:
            out.pop()
        else:
            out.append(g)
    return Word(tuple(out), w.degree)


def word_inverse(w: Word) -> Word:
    return Word(w.letters[::-1], w.degree)


# ---------------------------------------------------------------------------
# permutations and the projection to S_n


@dataclass(frozen=True)
class Perm:
    """A bijection of {1, ..., n}; ``images[i-1]`` is the image of i."""

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(self.images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"not a permutation: {images}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, n: int) -> Perm:
        return cls(tuple(range(1, n + 1)))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x - 1]

    def __mul__(self, other: Perm) -> Perm:
        # (f * g)(x) = f(g(x))
        return Perm(tuple(self.images[y - 1] for y in other.images))

    def inverse(self) -> Perm:
        inv = [0] * len(self.images)
        for i, y in enumerate(self.images, start=1):
            inv[y - 1] = i
        return Perm(tuple(inv))

    def is_identity(self) -> bool:
        return all(y == i for i, y in enumerate(self.images, start=1))

    def __str__(self):
        return "(" + ",".join(map(str, self.images)) + ")"


def generator_perm(g: Generator, n: int) -> Perm:
    """Reversal of the interval [p, q]."""
    return Perm(tuple(g.p + g.q - i if g.p <= i <= g.q else i for i in range(1, n + 1)))


def longest_perm(n: int) -> Perm:
    return Perm(tuple(range(n, 0, -1)))


def pi(w: Word) -> Perm:
    """Image in S_n; the rightmost letter acts first."""
    n = w.degree
    return reduce(lambda acc, g: acc * generator_perm(g, n), w.letters, Perm.identity(n))


def is_pure(w: Word) -> bool:
    return pi(w).is_identity()


# ---------------------------------------------------------------------------
# presentations


def _cyclic_key(letters: Sequence[Generator]) -> tuple:
    """Canonical form of a cyclic word up to rotation and reversal."""
    k = len(letters)
    variants = []
    for seq in (tuple(letters), tuple(letters[::-1])):
        for r in range(k):
            variants.append(seq[r:] + seq[:r])
    return min(variants)


@dataclass(frozen=True)
class Presentation:
    degree: int
    sizes: frozenset[int]
    generators: tuple[Generator, ...]
    relators: tuple[Word, ...]
    name: str = ""

    def __str__(self):
        gens = ", ".join(map(str, self.generators))
        rels = ", ".join(str(r) for r in self.relators)
        return f"<{gens} | {rels}>"

    def long_relators(self) -> tuple[Word, ...]:
        return tuple(r for r in self.relators if len(r) > 2)


def presentation(n: int, sizes: Iterable[int] | None = None, name: str = "") -> Presentation:
    """J_n^S for S = ``sizes`` (all of [2, n] when omitted).

    Relators: squares; s_{p,q} s_{m,r} s_{p,q} s_{m,r} for disjoint intervals;
    s_{p,q} s_{m,r} s_{p,q} s_{p+q-r,p+q-m} for [m,r] strictly inside [p,q].
    Duplicates up to rotation and reversal are dropped.
    """
    if not (2 <= n <= MAX_DEGREE):
        raise ValueError(f"degree {n} out of range")
    S = frozenset(range(2, n + 1) if sizes is None else sizes)
    if not S or not S <= set(range(2, n + 1)):
        raise ValueError(f"bad size set {sorted(S)} for degree {n}")
    gens = tuple(sorted(Generator(p, q) for p in range(1, n) for q in range(p + 1, n + 1)
                        if q - p + 1 in S))
    genset = set(gens)
    relators: list[Word] = [Word((g, g), n) for g in gens]
    seen = set()
    for a in gens:
        for b in gens:
            if a == b:
                continue
            if a.q < b.p or b.q < a.p:
                letters = (a, b, a, b)
            elif a.p <= b.p and b.q <= a.q:
                image = Generator(a.p + a.q - b.q, a.p + a.q - b.p)
                if image not in genset:
                    continue
                letters = (a, b, a, image)
            else:
                continue
            key = _cyclic_key(letters)
            if key in seen:
                continue
            seen.add(key)
            relators.append(Word(letters, n))
    return Presentation(n, S, gens, tuple(relators), name)


PRESENTATIONS = {
    "j3-2": (3, (2,)),
    "j3": (3, None),
    "j4-23": (4, (2, 3)),
    "j4": (4, None),
}


def named_presentation(name: str) -> Presentation:
    try:
        n, sizes = PRESENTATIONS[name]
    except KeyError:
        raise ValueError(f"unknown group {name!r}; choose from {sorted(PRESENTATIONS)}") from None
    return presentation(n, sizes, name)


# ---------------------------------------------------------------------------
# the split J_n = J_n^{[2,n-1]} x| <s_{1,n}>


def top_generator(n: int) -> Generator:
    return Generator(1, n)


def sigma_letter(g: Generator, n: int) -> Generator:
    """Conjugation by s_{1,n}: s_{p,q} -> s_{n+1-q, n+1-p}."""
    if g == top_generator(n):
        raise ValueError(f"{g} is the conjugating generator")
    return Generator(n + 1 - g.q, n + 1 - g.p)


def sigma(w: Word) -> Word:
    """Letterwise conjugation by s_{1,n} (s12<->s34, s13<->s24, s23 fixed for n=4)."""
    n = w.degree
    return Word(tuple(sigma_letter(g, n) for g in w.letters), n)


def sigma_power(w: Word, flip: bool) -> Word:
    return sigma(w) if flip else w


@dataclass(frozen=True)
class SplitForm:
    """``w * s_{1,n}^flip`` with ``w`` free of s_{1,n}."""

    w: Word
    flip: bool

    def __post_init__(self):
        top = top_generator(self.w.degree)
        if top in self.w.letters:
            raise ValueError(f"w part may not contain {top}")
        object.__setattr__(self, "flip", bool(self.flip))

    @property
    def degree(self) -> int:
        return self.w.degree

    def full_word(self) -> Word:
        tail = (top_generator(self.degree),) if self.flip else ()
        return Word(self.w.letters + tail, self.degree)

    def __mul__(self, other: SplitForm) -> SplitForm:
        return split_mul(self, other)

    def __str__(self):
        return f"({self.w or 'e'}, flip={int(self.flip)})"


def split_form(w: Word) -> SplitForm:
    """Push every s_{1,n} to the right via s_{1,n} x = sigma(x) s_{1,n}."""
    n = w.degree
    top = top_generator(n)
    out: list[Generator] = []
    flip = False
    for g in w.letters:
        if g == top:
            flip = not flip
        else:
            out.append(sigma_letter(g, n) if flip else g)
    return SplitForm(Word(tuple(out), n), flip)


def split_mul(a: SplitForm, b: SplitForm) -> SplitForm:
    return SplitForm(a.w * sigma_power(b.w, a.flip), a.flip != b.flip)


def split_inverse(a: SplitForm) -> SplitForm:
    """(w s^f)^{-1} = s^f w^{-1} = sigma^f(w^{-1}) s^f."""
    return SplitForm(sigma_power(word_inverse(a.w), a.flip), a.flip)

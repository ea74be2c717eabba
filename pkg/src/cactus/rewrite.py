"""Shortlex Knuth-Bendix completion over involutive generators.

Used as a second word-problem oracle, independent of the ball construction.
Words are handled internally as tuples of generator ranks.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from .words import Generator, Presentation, Word

# s12 < s13 < s23 < s24 < s34 < s14
GENERATOR_ORDER = tuple(Generator(p, q) for p, q in [(1, 2), (1, 3), (2, 3), (2, 4), (3, 4), (1, 4)])

DEFAULT_MAX_RULES = 4096


def generator_order(gens) -> tuple[Generator, ...]:
    known = [g for g in GENERATOR_ORDER if g in gens]
    rest = sorted(g for g in gens if g not in GENERATOR_ORDER)
    return tuple(known + rest)


def shortlex_key(w: tuple[int, ...]):
    return (len(w), w)


@dataclass(frozen=True)
class Rule:
    lhs: Word
    rhs: Word

    def __str__(self):
        return f"{self.lhs or 'e'} -> {self.rhs or 'e'}"


class RewriteSystem:
    def __init__(self, alphabet: tuple[Generator, ...], degree: int, rules: dict, status: str):
        self.alphabet = alphabet
        self.degree = degree
        self.status = status
        self._rules = dict(rules)
        self._maxlen = max((len(l) for l in self._rules), default=0)
        self._rank = {g: i for i, g in enumerate(alphabet)}

    @property
    def confluent(self) -> bool:
        return self.status == "confluent"

    def __len__(self):
        return len(self._rules)

    @property
    def rules(self) -> list[Rule]:
        out = []
        for lhs in sorted(self._rules, key=shortlex_key):
            out.append(Rule(self._word(lhs), self._word(self._rules[lhs])))
        return out

    def _word(self, t: tuple[int, ...]) -> Word:
        return Word(tuple(self.alphabet[i] for i in t), self.degree)

    def _encode(self, w: Word) -> tuple[int, ...]:
        try:
            return tuple(self._rank[g] for g in w.letters)
        except KeyError as exc:
            raise ValueError(f"{exc.args[0]} is not in the alphabet") from None

    def reduce(self, t: tuple[int, ...]) -> tuple[int, ...]:
        return _reduce(t, self._rules, self._maxlen)

    def __str__(self):
        return "\n".join(str(r) for r in self.rules)


def _reduce(t, rules, maxlen):
    """Leftmost reduction to a fixed point using a stack."""
    out: list[int] = []
    pending = list(reversed(t))
    while pending:
        out.append(pending.pop())
        for k in range(1, min(maxlen, len(out)) + 1):
            rhs = rules.get(tuple(out[-k:]))
            if rhs is not None:
                del out[-k:]
                pending.extend(reversed(rhs))
                break
    return tuple(out)


def _overlaps(l1, l2):
    """Proper overlaps: suffix of l1 equal to prefix of l2."""
    for k in range(1, min(len(l1), len(l2))):
        if l1[-k:] == l2[:k]:
            yield k


def kb_complete(pres: Presentation, max_rules: int = DEFAULT_MAX_RULES) -> RewriteSystem:
    alphabet = generator_order(pres.generators)
    if max_rules < len(alphabet):
        raise ValueError("max_rules must be at least the number of generators")
    rank = {g: i for i, g in enumerate(alphabet)}

    rules: dict[tuple[int, ...], tuple[int, ...]] = {}
    maxlen = 0
    heap: list = []
    counter = 0

    def push(a, b, overlap):
        nonlocal counter
        heapq.heappush(heap, (shortlex_key(overlap), counter, a, b))
        counter += 1

    for r in pres.relators:
        word = tuple(rank[g] for g in r.letters)
        push(word, (), word)

    capped = False
    while heap:
        _, _, a, b = heapq.heappop(heap)
        a = _reduce(a, rules, maxlen)
        b = _reduce(b, rules, maxlen)
        if a == b:
            continue
        if shortlex_key(a) < shortlex_key(b):
            a, b = b, a
        # interreduce: rules whose lhs contains a are demoted to equations
        for lhs in [l for l in rules if _contains(l, a)]:
            rhs = rules.pop(lhs)
            push(lhs, rhs, lhs)
        rules[a] = b
        maxlen = max(len(l) for l in rules)
        for lhs in list(rules):
            if lhs != a:
                rules[lhs] = _reduce(rules[lhs], rules, maxlen)
        for l2, r2 in list(rules.items()):
            for l1, r1, l3, r3 in ((a, b, l2, r2), (l2, r2, a, b)):
                for k in _overlaps(l1, l3):
                    overlap = l1 + l3[k:]
                    push(r1 + l3[k:], l1[:-k] + r3, overlap)
        if len(rules) > max_rules:
            capped = True
            break

    if capped:
        rules = _interreduce(rules)
    status = "capped" if capped else "confluent"
    return RewriteSystem(alphabet, pres.degree, rules, status)


def _contains(big, small):
    if len(small) > len(big) or big == small:
        return False
    k = len(small)
    return any(big[i:i + k] == small for i in range(len(big) - k + 1))


def _interreduce(rules):
    rules = dict(rules)
    changed = True
    while changed:
        changed = False
        for lhs in sorted(rules, key=shortlex_key, reverse=True):
            others = {l: r for l, r in rules.items() if l != lhs}
            maxlen = max((len(l) for l in others), default=0)
            new_lhs = _reduce(lhs, others, maxlen)
            if new_lhs != lhs:
                rhs = rules.pop(lhs)
                rhs = _reduce(rhs, others, maxlen)
                if new_lhs != rhs:
                    a, b = (new_lhs, rhs) if shortlex_key(rhs) < shortlex_key(new_lhs) else (rhs, new_lhs)
                    rules[a] = b
                changed = True
                break
        maxlen = max((len(l) for l in rules), default=0)
        for lhs in rules:
            rules[lhs] = _reduce(rules[lhs], {l: r for l, r in rules.items() if l != lhs}, maxlen)
    return rules


def rewrite(system: RewriteSystem, w: Word) -> Word:
    return system._word(system.reduce(system._encode(w)))

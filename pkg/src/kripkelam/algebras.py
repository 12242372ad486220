"""Example algebras: size, canonical pretty printing, de Bruijn conversion.

Each algebra interprets one binder node. The size algebra works at an
integer carrier directly. The other two use function carriers (name stream
to text, nesting depth to tree), so the interesting recursion happens when
the folded value is applied; the entry points ``print_term`` and
``to_debruijn`` run that application inside the nesting guard.
"""

from __future__ import annotations

from dataclasses import dataclass

from .debruijn import DbTerm, Lam, Var
from .encoding import Algebra, Rename, Term, fold, run_guarded

__all__ = [
    "NameStream",
    "names",
    "print_alg",
    "print_term",
    "size",
    "size_alg",
    "to_debruijn",
    "to_debruijn_alg",
]


@dataclass(frozen=True)
class NameStream:
    """Infinite supply of canonical names x{n}, x{n+1}, ... by index."""

    start: int = 1

    @property
    def head(self) -> str:
        return f"x{self.start}"

    @property
    def rest(self) -> "NameStream":
        return NameStream(self.start + 1)


def names(start: int = 1) -> NameStream:
    return NameStream(start)


def _size_lam(body, embed, alg):
    # One for the binder, one per occurrence of its variable: the variable
    # denotes 1 and the body is re-interpreted with the same algebra.
    return 1 + body(Rename.identity(), 1).interpret(alg)


_SIZE_ALG = Algebra(_size_lam, name="size")


def size_alg() -> Algebra:
    """Integer carrier: binders and variable occurrences count one each."""
    return _SIZE_ALG


def size(t: Term, max_depth: int | None = None) -> int:
    return fold(size_alg(), t, max_depth)


def _print_lam(body, embed, alg):
    def render(stream: NameStream) -> str:
        x = stream.head
        rendered = body(Rename.identity(), lambda _stream: x).interpret(alg)
        return "\\ " + x + ". " + rendered(stream.rest)

    return render


_PRINT_ALG = Algebra(_print_lam, name="print")


def print_alg() -> Algebra:
    """Carrier ``NameStream -> str``.

    The binder takes the head name for itself; its variable's denotation
    discards whatever stream it is handed and returns that name.
    """
    return _PRINT_ALG


def print_term(t: Term, max_depth: int | None = None) -> str:
    """Render a closed term using the name stream starting at x1."""
    return run_guarded(lambda: fold(print_alg(), t)(names(1)), max_depth)


def _debruijn_lam(body, embed, alg):
    def at_depth(v: int) -> DbTerm:
        bound = v + 1
        inner = body(Rename.identity(), lambda n: Var(n - bound)).interpret(alg)
        return Lam(inner(bound))

    return at_depth


_TO_DEBRUIJN_ALG = Algebra(_debruijn_lam, name="debruijn")


def to_debruijn_alg() -> Algebra:
    """Carrier ``int -> DbTerm``, the int being the current binder depth.

    A binder met at depth v interprets its body at v + 1 and gives the
    variable the denotation ``n -> Var(n - (v + 1))``, so an occurrence at
    depth n gets the index counting the binders in between.
    """
    return _TO_DEBRUIJN_ALG


def to_debruijn(t: Term, max_depth: int | None = None) -> DbTerm:
    """Convert a closed term to de Bruijn form, starting at depth 1."""
    return run_guarded(lambda: fold(to_debruijn_alg(), t)(1), max_depth)

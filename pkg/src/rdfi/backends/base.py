"""Interface shared by the per-language decision procedures."""

from __future__ import annotations

from ..errors import LanguageMismatch, UnknownDatatype
from ..formulas import Diff, Rel, Truth
from ..terms import CLiteral, ELiteral, Variable


class Backend:
    """Decides conjunctions of positive atoms of one constraint language.

    Atoms handed to ``conj_sat`` and ``model`` mention only e-literals and
    constants; ground atoms are settled beforehand with ``holds``.
    """

    language: str = ""
    sort: str = ""

    # -- vocabulary -------------------------------------------------------
    def valid_value(self, value) -> bool:
        raise NotImplementedError

    def check_operand(self, o) -> None:
        if isinstance(o, ELiteral):
            if o.datatype != self.sort:
                raise UnknownDatatype(f"{o} has datatype {o.datatype!r}, expected {self.sort!r}")
        elif isinstance(o, CLiteral):
            if o.datatype != self.sort:
                raise UnknownDatatype(f"{o} has datatype {o.datatype!r}, expected {self.sort!r}")
            if not self.valid_value(o.value):
                raise LanguageMismatch(f"{o} is not a {self.language} constant")
        elif isinstance(o, Variable):
            if not o.special:
                raise LanguageMismatch(f"normal variable {o} inside a {self.language} constraint")
        else:
            raise LanguageMismatch(f"{o} cannot appear in a {self.language} constraint")

    def check_atom(self, atom) -> None:
        if isinstance(atom, Truth):
            return
        raise LanguageMismatch(f"{atom} is not a {self.language} constraint")

    # -- semantics --------------------------------------------------------
    def negate(self, atom) -> list:
        raise NotImplementedError

    def holds(self, atom) -> bool:
        raise NotImplementedError

    def conj_sat(self, atoms) -> bool:
        raise NotImplementedError

    def model(self, atoms, lits) -> dict | None:
        raise NotImplementedError

    def absorb(self, disjuncts) -> object | None:
        """Optionally fold a disjunction into a single solver atom."""
        return None

    def constant(self, value) -> CLiteral:
        return CLiteral(value, self.sort)


def rel_operands_ok(backend: Backend, atom: Rel) -> None:
    backend.check_operand(atom.left)
    backend.check_operand(atom.right)


def is_diff(atom) -> bool:
    return isinstance(atom, Diff)

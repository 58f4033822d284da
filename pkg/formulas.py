"""
Formulas Module
Closed-form values and upper bounds for MIM of grids, with applicability
guards, combined into a best-known BoundResult per (n, m).
This subroutine works independently and can be tested in isolation.

All arithmetic is exact integer arithmetic.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from grid_core import make_grid

THM_2_2 = 'Thm2.2'
THM_2_4 = 'Thm2.4'
NEW_BOUND_1MOD4 = 'NewBound-1mod4'
NEW_BOUND_3MOD4 = 'NewBound-3mod4'
CONSTRUCTION = 'Construction'
SOLVER = 'Solver'
PATH = 'Path'

# Reporting order for provenance tags
TAG_ORDER = [PATH, THM_2_2, SOLVER, CONSTRUCTION, THM_2_4, NEW_BOUND_1MOD4, NEW_BOUND_3MOD4]

NOTE_MINUS_SEVEN = (
    "NewBound-1mod4: statement reads floor((2mn-m-3)/8), proof concludes "
    "floor((2mn-m-7)/8); the statement (-3) is used"
)


class InapplicableFormulaError(ValueError):
    """Raised when a bound is requested outside its stated domain."""


@dataclass(frozen=True)
class FormulaApplicability:
    applicable: bool
    guard_note: str = ''


@dataclass
class BoundResult:
    """Exact value or [lower, upper] interval for MIM with provenance tags."""

    n: int
    m: int
    lower: int
    upper: int
    exact: Optional[int] = None
    provenance: List[str] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    def __post_init__(self):
        if self.lower > self.upper:
            raise ValueError(f"lower {self.lower} exceeds upper {self.upper} for ({self.n}, {self.m})")
        if self.exact is not None and not (self.lower == self.upper == self.exact):
            raise ValueError("exact value must equal both lower and upper")
        if not self.provenance:
            raise ValueError("a bound must carry at least one provenance tag")

    def to_dict(self) -> Dict:
        return {
            'n': self.n,
            'm': self.m,
            'exact': self.exact,
            'lower': self.lower,
            'upper': self.upper,
            'tags': list(self.provenance),
            'notes': list(self.notes),
        }


def _sorted_tags(tags) -> List[str]:
    return sorted(set(tags), key=TAG_ORDER.index)


def vsb_value(n: int, m: int) -> Optional[int]:
    """
    |V_sb| of G_{n,m} from the saturable-count lemma.

    Item (2) (n in {3, 5}, m odd >= 3) takes precedence on its domain; item (1)
    gives (mn+2)/2 for m = 2 mod 4 with n odd and mn/2 otherwise. The
    "otherwise" branch is only taken where mn is even; odd mn outside item (2)
    returns None.

    Args:
        n: Rows, at least 2
        m: Columns, at least 2

    Returns:
        Optional[int]: None where the lemma is silent
    """
    if n < 2 or m < 2:
        return None
    if n in (3, 5) and m % 2 == 1:
        return (n * m + 1) // 2
    if m % 4 == 2 and n % 2 == 1:
        return (m * n + 2) // 2
    if (m * n) % 2 == 0:
        return m * n // 2
    return None


def mim_exact_formula(n: int, m: int) -> Optional[int]:
    """
    Exact MIM where known in closed form.

    The pair is normalized to n <= m (MIM is transpose-invariant). Returns
    ceil(mn/4) if either dimension is even; for n in {3, 5} and odd m,
    n(m-1)/4 + 1 when m = 1 (mod 4) and (n(m-1)+2)/4 when m = 3 (mod 4);
    None for odd n >= 7 with odd m.
    """
    if n < 2 or m < 2:
        return None
    n, m = min(n, m), max(n, m)
    if n % 2 == 0 or m % 2 == 0:
        return (m * n + 3) // 4
    if n in (3, 5):
        if m % 4 == 1:
            return n * (m - 1) // 4 + 1
        return (n * (m - 1) + 2) // 4
    return None


def path_value(length: int) -> int:
    """MIM of the path on `length` vertices (grids with a dimension of 1)."""
    if length < 1:
        raise ValueError(f"Path length must be positive, got {length}")
    return (length + 1) // 3


def marinescu_upper(n: int, m: int) -> int:
    """
    floor((mn+1)/4) for odd grids.

    Raises:
        InapplicableFormulaError: If a dimension is even or below 2
    """
    if n < 2 or m < 2 or n % 2 == 0 or m % 2 == 0:
        raise InapplicableFormulaError(f"Thm2.4 needs n, m >= 2 with mn odd, got ({n}, {m})")
    return (m * n + 1) // 4


def new_upper_unguarded(n: int, m: int) -> Optional[int]:
    """
    The printed new-bound expressions with no lower guard on n or m.

    Only used to document where the guards matter (e.g. n = 5, m = 23).
    """
    if m % 4 != 3:
        return None
    if n % 4 == 1:
        return (2 * m * n - m - 3) // 8
    if n % 4 == 3:
        if m % 8 == 3:
            return (2 * m * n - m + 1) // 8
        return (2 * m * n - m + 5) // 8
    return None


def new_upper(n: int, m: int) -> Tuple[Optional[int], FormulaApplicability]:
    """
    Improved upper bounds for odd grids with m = 3 (mod 4).

    n = 1 (mod 4), n >= 9, m >= 23: floor((2mn-m-3)/8).
    n = 3 (mod 4), n >= 7, m >= 11: floor((2mn-m+1)/8) for m = 3 (mod 8),
    floor((2mn-m+5)/8) for m = 7 (mod 8).

    The lower guards on n are stricter than the printed statements: n = 5 and
    n = 3 give values below the exact MIM, so they are excluded and the
    guard_note says so.

    Returns:
        Tuple[Optional[int], FormulaApplicability]
    """
    if n < 2 or m < 2:
        return None, FormulaApplicability(False, "requires n, m >= 2")
    if m % 4 != 3:
        return None, FormulaApplicability(False, f"requires m = 3 (mod 4), got m = {m}")
    if n % 4 == 1:
        if n < 9:
            return None, FormulaApplicability(
                False, f"requires n >= 9 (n = {n} gives a value below the exact MIM)")
        if m < 23:
            return None, FormulaApplicability(False, f"requires m >= 23, got m = {m}")
        return (2 * m * n - m - 3) // 8, FormulaApplicability(True, NOTE_MINUS_SEVEN)
    if n % 4 == 3:
        if n < 7:
            return None, FormulaApplicability(
                False, f"requires n >= 7 (n = {n} gives a value below the exact MIM)")
        if m < 11:
            return None, FormulaApplicability(False, f"requires m >= 11, got m = {m}")
        if m % 8 == 3:
            return (2 * m * n - m + 1) // 8, FormulaApplicability(True, "m = 8k'+3 branch")
        return (2 * m * n - m + 5) // 8, FormulaApplicability(True, "m = 8k'+7 branch")
    return None, FormulaApplicability(False, f"requires odd n, got n = {n}")


def new_upper_tag(n: int) -> str:
    return NEW_BOUND_1MOD4 if n % 4 == 1 else NEW_BOUND_3MOD4


def bounds(n: int, m: int, solve: bool = False, max_rows: int = 10) -> BoundResult:
    """
    Best-known value or interval for MIM of G_{n,m}.

    Args:
        n: Rows, at least 1
        m: Columns, at least 1
        solve: Run the exact solver when no closed form applies and the
            smaller dimension fits max_rows
        max_rows: Solver capacity used when solve is True

    Returns:
        BoundResult (symmetric in n and m)
    """
    make_grid(n, m)

    if min(n, m) == 1:
        value = path_value(max(n, m))
        return BoundResult(n, m, value, value, value, [PATH])

    exact = mim_exact_formula(n, m)
    if exact is not None:
        return BoundResult(n, m, exact, exact, exact, [THM_2_2])

    if solve and min(n, m) <= max_rows:
        from solver import solve_mim
        from grid_core import GridSpec

        size = solve_mim(GridSpec(n, m), max_rows=max_rows).size
        return BoundResult(n, m, size, size, size, [SOLVER])

    tags = []
    notes = []
    uppers = []
    if n % 2 == 1 and m % 2 == 1:
        uppers.append(marinescu_upper(n, m))
        tags.append(THM_2_4)
    for a, b in ((n, m), (m, n)):
        value, applicability = new_upper(a, b)
        if value is not None:
            uppers.append(value)
            tags.append(new_upper_tag(a))
            if a % 4 == 1 and NOTE_MINUS_SEVEN not in notes:
                notes.append(NOTE_MINUS_SEVEN)
    if not uppers:
        # every grid with exact absent is odd x odd, so Thm2.4 always applies
        raise InapplicableFormulaError(f"No upper bound applies to ({n}, {m})")

    lower = 0
    from constructions import ConstructionFailure, construct

    try:
        built = construct(n, m)
        lower = len(built)
        tags.append(CONSTRUCTION)
    except ConstructionFailure:
        pass

    return BoundResult(n, m, lower, min(uppers), None, _sorted_tags(tags), notes)

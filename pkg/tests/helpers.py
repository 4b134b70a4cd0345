"""Shared random generators for property tests."""

from ltlwb import And, Bottom, Finally, Globally, Implies, Next, Not, Or, Prop, Top, Until

_UNARY = {"X": Next, "F": Finally, "G": Globally}
_BINARY = {"U": Until}


def random_formula(rng, size, ops="XFGU", names=("p", "q", "r")):
    """Random formula with roughly `size` nodes over the given temporal ops."""
    if size <= 1:
        r = rng.random()
        if r < 0.8:
            return Prop(rng.choice(names))
        return Top() if r < 0.9 else Bottom()
    choices = ["!", "&", "|", "->"]
    for op in ops:
        choices.append(op)
        choices.append(op)
    pick = rng.choice(choices)
    if pick == "!":
        return Not(random_formula(rng, size - 1, ops, names))
    if pick in _UNARY:
        return _UNARY[pick](random_formula(rng, size - 1, ops, names))
    lsize = rng.randint(1, size - 1)
    left = random_formula(rng, lsize, ops, names)
    right = random_formula(rng, size - 1 - lsize, ops, names)
    if pick == "&":
        return And(left, right)
    if pick == "|":
        return Or(left, right)
    if pick == "->":
        return Implies(left, right)
    return _BINARY[pick](left, right)

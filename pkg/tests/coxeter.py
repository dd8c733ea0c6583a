"""The dihedral group of order 2m, as the Coxeter quotient of the Artin group.

Equal Artin elements have equal images, which gives an oracle for
inequality that is independent of the normal form.
"""


def image(m: int, word) -> tuple:
    """Element of D_m as (rotation, reflected) after a -> s, b -> t."""
    rot, refl = 0, 0
    for letter, exp in word.syllables:
        for _ in range(abs(exp) % 2):  # generators are involutions
            axis = 0 if letter == "a" else 1
            # reflection with axis index k acts as x -> k - x on Z/m
            rot, refl = (axis - rot) % m, 1 - refl
    return rot, refl

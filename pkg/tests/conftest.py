import random
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))


def random_graded_cone(rng: random.Random, d: int, max_rays: int = 6, max_entry: int = 7):
    """Random full-dimensional pointed cone with a positive grading.

    Pointedness is forced by drawing generators with positive value under a
    random positive grading.
    """
    from oracles import frac_rank

    while True:
        grading = tuple(rng.randint(1, 3) for _ in range(d))
        n = rng.randint(d, max_rays)
        gens = []
        for _ in range(n):
            for _attempt in range(50):
                g = tuple(rng.randint(-max_entry, max_entry) for _ in range(d))
                if sum(w * x for w, x in zip(grading, g)) > 0:
                    gens.append(g)
                    break
        if len(gens) == n and frac_rank(gens) == d and len(set(gens)) == n:
            return gens, grading

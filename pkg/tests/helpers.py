from storalloc import make_allocation


def random_allocation(problem, rng):
    """Uniformly random composition of T into n non-negative parts."""
    cuts = sorted(rng.randint(0, problem.T) for _ in range(problem.n - 1))
    parts = [b - a for a, b in zip([0] + cuts, cuts + [problem.T])]
    return make_allocation(parts, problem)

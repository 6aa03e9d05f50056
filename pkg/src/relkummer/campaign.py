"""Seeded random instances and verification campaigns."""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .errors import DomainError
from .instance import InstanceFile, parse_field
from .kummer import VerificationReport, verify_relative_kummer
from .polyarith import Polynomial
from .ratfield import GaloisContext

DISTRIBUTION_NOTE = (
    "each instance has a uniform number of generators in [1, max_gens]; each generator is a "
    "polynomial of degree uniform in [0, max_deg] with coefficients uniform in k, zero polynomials "
    "redrawn")


@dataclass(frozen=True)
class CampaignConfig:
    count: int
    p: int
    l: int
    field: str
    max_gens: int = 3
    max_deg: int = 5
    seed: int = 0

    def validate(self) -> GaloisContext:
        if self.count < 0:
            raise DomainError("count must be nonnegative")
        if self.max_gens < 1 or self.max_deg < 0:
            raise DomainError("max_gens must be >= 1 and max_deg >= 0")
        return GaloisContext.create(self.p, self.l, parse_field(self.field))

    def to_dict(self) -> dict:
        return {"count": self.count, "p": self.p, "l": self.l, "field": self.field,
                "max_gens": self.max_gens, "max_deg": self.max_deg, "seed": self.seed}


def random_generator(ctx: GaloisContext, max_deg: int, rng: random.Random) -> Polynomial:
    k = ctx.field
    while True:
        d = rng.randint(0, max_deg)
        f = Polynomial(k, [rng.randrange(k.order) for _ in range(d + 1)])
        if not f.is_zero():
            return f


def random_instance(config: CampaignConfig, index: int, ctx: GaloisContext | None = None) -> InstanceFile:
    """Instance ``index`` of a campaign; depends only on (config, index)."""
    ctx = ctx or config.validate()
    rng = random.Random(f"{config.seed}:{index}")
    n = rng.randint(1, config.max_gens)
    gens = [str(random_generator(ctx, config.max_deg, rng)) for _ in range(n)]
    return InstanceFile(p=config.p, l=config.l, field=config.field, generators=gens,
                        seed=rng.randrange(2**31), label=f"random-{config.seed}-{index}")


def run_instance(inst: InstanceFile) -> VerificationReport:
    ctx = inst.context()
    return verify_relative_kummer(inst.parsed_generators(ctx), ctx, inst.seed or 0, inst.to_dict())


def _run_indexed(args):
    config, index = args
    return run_instance(random_instance(config, index))


def run_campaign(config: CampaignConfig, jobs: int = 1) -> list[VerificationReport]:
    ctx = config.validate()
    if jobs <= 1:
        return [run_instance(random_instance(config, i, ctx)) for i in range(config.count)]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        # map preserves submission order, so reports stay sorted by index
        return list(pool.map(_run_indexed, [(config, i) for i in range(config.count)]))

"""Map-hopping pseudo-random bit generator.

Each emitted block comes from one hop: the logistic driver y is advanced,
the hop target parameter is b = blimit * y, the working iterate x is run r
times through the map at that b (with a trap guarding the interval's
endpoints after every sub-iteration), and the low `bits_per_block` bits of
floor(x * 2^52) are emitted. The driver is floored at 1/blimit so b stays
positive; when the driver itself decays below the floor it is re-seeded
from x.

The generator is a deterministic function of its config: identical configs
produce bit-identical streams of any length, on either kernel path.
"""

import math
from dataclasses import dataclass, replace

import numpy as np

from . import _kernels

_DISALLOWED_SEEDS = {
    0.0: "seed 0 is a fixed point of the driver (the stream would be constant)",
    1.0: "seed 1 maps to the driver's fixed point 0 immediately",
    0.75: "seed 0.75 is the non-trivial fixed point of the logistic driver",
}


@dataclass(frozen=True)
class BeachConfig:
    """Generator parameters. seed in (0,1) excluding 0.75; r inner
    iterations per hop; blimit caps the hop parameter; zero_trap_eps is the
    endpoint-guard band; bits_per_block in 1..52 selects how many low-order
    bits of each 52-bit extraction are emitted."""

    seed: float
    r: int = 20
    blimit: float = 10_000.0
    zero_trap_eps: float = 1e-12
    bits_per_block: int = 32

    def __post_init__(self):
        seed = float(self.seed)
        if seed in _DISALLOWED_SEEDS:
            raise ValueError(_DISALLOWED_SEEDS[seed])
        if not (0.0 < seed < 1.0) or math.isnan(seed):
            raise ValueError(f"seed must lie in (0, 1), got {seed!r}")
        if self.r < 1:
            raise ValueError("r must be >= 1")
        if not self.blimit > 1.0:
            raise ValueError("blimit must exceed 1")
        if not (0.0 < self.zero_trap_eps < 0.5):
            raise ValueError("zero_trap_eps must lie in (0, 0.5)")
        if not (1 <= self.bits_per_block <= 52):
            raise ValueError("bits_per_block must lie in 1..52")
        object.__setattr__(self, "seed", seed)
        object.__setattr__(self, "blimit", float(self.blimit))
        object.__setattr__(self, "zero_trap_eps", float(self.zero_trap_eps))


@dataclass
class BeachState:
    """Evolving generator state; single-owner, mutated by next_block/fill_bits."""

    config: BeachConfig
    x: float
    y: float
    blocks_emitted: int = 0


def new_generator(config: BeachConfig) -> BeachState:
    """Fresh state with x = y = seed and nothing emitted."""
    return BeachState(config=config, x=config.seed, y=config.seed)


def zero_trap(x: float, y: float, eps: float) -> float:
    """Endpoint guard: x passes through iff eps <= x <= 1-eps; otherwise the
    driver iterate y is substituted when it is in band, else the edge eps."""
    if not (0.0 < eps < 0.5):
        raise ValueError("eps must lie in (0, 0.5)")
    return _kernels.zero_trap_value(float(x), float(y), float(eps))


def next_block(state: BeachState) -> int:
    """Advance one hop and return the next bits_per_block-bit integer."""
    cfg = state.config
    x, y, v = _kernels.beach_block(state.x, state.y, cfg.r, cfg.blimit,
                                   cfg.zero_trap_eps)
    state.x = x
    state.y = y
    state.blocks_emitted += 1
    return int(v) & ((1 << cfg.bits_per_block) - 1)


def next_blocks(state: BeachState, n: int) -> np.ndarray:
    """Bulk form of next_block: n masked block values as int64."""
    if n < 1:
        raise ValueError("n must be >= 1")
    cfg = state.config
    raw = np.empty(n, dtype=np.int64)
    x, y = _kernels.beach_fill(state.x, state.y, cfg.r, cfg.blimit,
                               cfg.zero_trap_eps, raw)
    state.x = x
    state.y = y
    state.blocks_emitted += n
    return raw & np.int64((1 << cfg.bits_per_block) - 1)


def fill_bits(state: BeachState, n_bits: int) -> np.ndarray:
    """n_bits as a uint8 0/1 array, most-significant-bit-first within each
    block, consuming ceil(n_bits / bits_per_block) blocks."""
    if n_bits < 1:
        raise ValueError("n_bits must be >= 1")
    width = state.config.bits_per_block
    n_blocks = -(-n_bits // width)
    blocks = next_blocks(state, n_blocks)
    shifts = np.arange(width - 1, -1, -1, dtype=np.int64)
    bits = ((blocks[:, None] >> shifts) & 1).astype(np.uint8)
    return bits.ravel()[:n_bits]


# -- resumable state snapshots ------------------------------------------------

_FLOAT_FIELDS = ("seed", "blimit", "eps", "x", "y")
_INT_FIELDS = ("r", "bits_per_block", "blocks_emitted")


def snapshot(state: BeachState) -> str:
    """Plain-text key=value snapshot; floats as exact hex literals."""
    cfg = state.config
    lines = [
        f"seed={cfg.seed.hex()}",
        f"r={cfg.r}",
        f"blimit={cfg.blimit.hex()}",
        f"eps={cfg.zero_trap_eps.hex()}",
        f"bits_per_block={cfg.bits_per_block}",
        f"x={state.x.hex()}",
        f"y={state.y.hex()}",
        f"blocks_emitted={state.blocks_emitted}",
    ]
    return "\n".join(lines) + "\n"


def restore(text: str) -> BeachState:
    """Rebuild a BeachState from snapshot() output."""
    fields = {}
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ValueError(f"malformed snapshot line {line!r}")
        fields[key.strip()] = value.strip()
    missing = (set(_FLOAT_FIELDS) | set(_INT_FIELDS)) - fields.keys()
    if missing:
        raise ValueError(f"snapshot missing fields: {sorted(missing)}")
    config = BeachConfig(
        seed=float.fromhex(fields["seed"]),
        r=int(fields["r"]),
        blimit=float.fromhex(fields["blimit"]),
        zero_trap_eps=float.fromhex(fields["eps"]),
        bits_per_block=int(fields["bits_per_block"]),
    )
    return BeachState(
        config=config,
        x=float.fromhex(fields["x"]),
        y=float.fromhex(fields["y"]),
        blocks_emitted=int(fields["blocks_emitted"]),
    )


def with_seed(config: BeachConfig, seed: float) -> BeachConfig:
    """Same parameters, different seed."""
    return replace(config, seed=seed)

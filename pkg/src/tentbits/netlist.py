"""Gate-level model of the k-bit tent-map register circuit.

The circuit wraps a bank of k D flip-flops holding the state word:

* k-1 XOR gates conditionally complement bits b1..b{k-1} against the
  top bit b0 (bit 0 itself needs no gate; the shift discards it),
* one XOR gate forms the serial perturbation bit from the two lowest
  register bits,
* a k-bit 2-to-1 multiplexer switches every flip-flop input between an
  external seed (load mode) and the next-state logic (run mode).

That is k XOR gates, k flip-flops and one multiplexer: 2k + 1 elements.
Simulation is two-phase synchronous: combinational nets settle in
topological order, then all flip-flops clock at once.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache

from .core import BitWidth, as_width, check_word

XOR2 = "XOR2"
DFF = "DFF"
MUX = "MUX"


class StructuralError(ValueError):
    """The netlist breaks a structural rule (drivers, loops, arity)."""


@dataclass(frozen=True)
class Element:
    """One circuit element: id, kind, input nets and output nets."""

    id: str
    kind: str
    inputs: tuple[str, ...]
    outputs: tuple[str, ...]

    def __post_init__(self) -> None:
        if self.kind == XOR2:
            ok = len(self.inputs) == 2 and len(self.outputs) == 1
        elif self.kind == DFF:
            ok = len(self.inputs) == 1 and len(self.outputs) == 1
        elif self.kind == MUX:
            # select net plus two input words, one output net per bit
            ok = (
                len(self.outputs) >= 1
                and len(self.inputs) == 2 * len(self.outputs) + 1
            )
        else:
            raise StructuralError(f"unknown element kind {self.kind!r}")
        if not ok:
            raise StructuralError(
                f"{self.kind} {self.id}: bad pin count "
                f"({len(self.inputs)} in, {len(self.outputs)} out)"
            )


@dataclass(frozen=True)
class Netlist:
    """A synchronous circuit: elements, nets, and its external inputs.

    The order of DFF elements defines the register readout: the first
    flip-flop holds the most significant bit.  seed_inputs follow the
    same ordering.
    """

    width: BitWidth
    elements: tuple[Element, ...]
    nets: tuple[str, ...]
    seed_inputs: tuple[str, ...]
    load_select: str
    zero_nets: tuple[str, ...] = ()

    def dffs(self) -> tuple[Element, ...]:
        return tuple(el for el in self.elements if el.kind == DFF)


@dataclass(frozen=True)
class SimState:
    """Register snapshot: flip-flop bits (MSB first) and a cycle counter."""

    bits: tuple[int, ...]
    cycle: int = 0

    @property
    def word(self) -> int:
        value = 0
        for bit in self.bits:
            value = (value << 1) | bit
        return value

    @classmethod
    def reset(cls, width: BitWidth | int) -> "SimState":
        return cls(bits=(0,) * as_width(width).k, cycle=0)


@dataclass
class ElementStats:
    """Element census: per-kind counts and the grand total."""

    counts: dict[str, int]
    total: int

    def describe(self) -> str:
        order = [XOR2, DFF, MUX]
        parts = [f"{kind} {self.counts[kind]}" for kind in order if kind in self.counts]
        parts += [
            f"{kind} {count}"
            for kind, count in sorted(self.counts.items())
            if kind not in order
        ]
        return ", ".join(parts) + f", total {self.total}"


def build_tent_netlist(width: BitWidth | int, perturbed: bool = True) -> Netlist:
    """Construct the register circuit for the given width.

    The complement bank computes c_i = b0 xor b_i for i = 1..k-1; the
    serial input of the shift register is b_{k-1} xor b_{k-2}, or a
    constant zero when the perturbation is disabled (that variant drops
    the perturbation gate and is only useful for cycle experiments).
    """
    width = as_width(width)
    k = width.k
    b = [f"b{i}" for i in range(k)]
    d = [f"d{i}" for i in range(k)]
    seeds = [f"seed{i}" for i in range(k)]

    elements: list[Element] = []
    for i in range(1, k):
        elements.append(Element(f"cmpl{i}", XOR2, (b[0], b[i]), (f"c{i}",)))
    if perturbed:
        elements.append(Element("pert", XOR2, (b[k - 1], b[k - 2]), ("p",)))
        serial = "p"
        zero_nets: tuple[str, ...] = ()
    else:
        serial = "zero"
        zero_nets = ("zero",)
    run_side = [f"c{i}" for i in range(1, k)] + [serial]
    elements.append(Element("mux", MUX, ("load", *seeds, *run_side), tuple(d)))
    for i in range(k):
        elements.append(Element(f"ff{i}", DFF, (d[i],), (b[i],)))

    nets = tuple(b) + tuple(f"c{i}" for i in range(1, k)) + (serial,) + tuple(d) \
        + tuple(seeds) + ("load",)
    return Netlist(
        width=width,
        elements=tuple(elements),
        nets=nets,
        seed_inputs=tuple(seeds),
        load_select="load",
        zero_nets=zero_nets,
    )


def element_stats(netlist: Netlist) -> ElementStats:
    counts = Counter(el.kind for el in netlist.elements)
    return ElementStats(counts=dict(counts), total=len(netlist.elements))


def validate_structure(netlist: Netlist) -> None:
    """Check the structural invariants every simulatable netlist needs.

    Each net has at most one driver; undriven nets must be declared
    externals (seed, load select, or constant zero); the combinational
    subgraph is acyclic, i.e. every feedback loop crosses a flip-flop;
    and the flip-flop count matches the declared width.
    """
    drivers: dict[str, str] = {}
    for el in netlist.elements:
        for out in el.outputs:
            if out in drivers:
                raise StructuralError(
                    f"net {out} driven by both {drivers[out]} and {el.id}"
                )
            drivers[out] = el.id
    externals = set(netlist.seed_inputs) | {netlist.load_select} | set(netlist.zero_nets)
    known = set(netlist.nets)
    for el in netlist.elements:
        for net in el.inputs:
            if net not in drivers and net not in externals:
                raise StructuralError(f"net {net} feeding {el.id} has no driver")
            if net not in known:
                raise StructuralError(f"net {net} missing from the net list")
        for net in el.outputs:
            if net not in known:
                raise StructuralError(f"net {net} missing from the net list")
    if len(netlist.dffs()) != netlist.width.k:
        raise StructuralError(
            f"{len(netlist.dffs())} flip-flops for a {netlist.width.k}-bit register"
        )
    _topo_order(netlist)


def _topo_order(netlist: Netlist) -> list[Element]:
    """Combinational elements in evaluation order; raises on loops."""
    ready = {el.outputs[0] for el in netlist.elements if el.kind == DFF}
    ready |= set(netlist.seed_inputs) | {netlist.load_select} | set(netlist.zero_nets)
    remaining = [el for el in netlist.elements if el.kind != DFF]
    order: list[Element] = []
    while remaining:
        stuck = True
        rest = []
        for el in remaining:
            if all(net in ready for net in el.inputs):
                order.append(el)
                ready.update(el.outputs)
                stuck = False
            else:
                rest.append(el)
        if stuck:
            names = ", ".join(el.id for el in rest)
            raise StructuralError(f"combinational cycle through: {names}")
        remaining = rest
    return order


@lru_cache(maxsize=64)
def _compiled_cycle(netlist: Netlist):
    """Compile one clock cycle of the netlist to a plain function.

    The generated function takes (bits, load, seed_bits) and returns the
    next register bits.  It evaluates exactly the topological order that
    the generic structural check produces, one statement per gate.
    """
    validate_structure(netlist)
    order = _topo_order(netlist)
    dffs = netlist.dffs()

    names: dict[str, str] = {}

    def ident(net: str) -> str:
        if net not in names:
            names[net] = f"n{len(names)}"
        return names[net]

    lines = ["def _cycle(bits, load, seed):"]
    for i, ff in enumerate(dffs):
        lines.append(f"    {ident(ff.outputs[0])} = bits[{i}]")
    for i, net in enumerate(netlist.seed_inputs):
        lines.append(f"    {ident(net)} = seed[{i}]")
    lines.append(f"    {ident(netlist.load_select)} = load")
    for net in netlist.zero_nets:
        lines.append(f"    {ident(net)} = 0")
    for el in order:
        if el.kind == XOR2:
            a, b = el.inputs
            lines.append(f"    {ident(el.outputs[0])} = {ident(a)} ^ {ident(b)}")
        elif el.kind == MUX:
            half = len(el.outputs)
            sel = ident(el.inputs[0])
            for j in range(half):
                loaded = ident(el.inputs[1 + j])
                running = ident(el.inputs[1 + half + j])
                lines.append(
                    f"    {ident(el.outputs[j])} = {loaded} if {sel} else {running}"
                )
        else:  # pragma: no cover - element kinds are closed by Element
            raise StructuralError(f"cannot evaluate element kind {el.kind}")
    returns = ", ".join(ident(ff.inputs[0]) for ff in dffs)
    lines.append(f"    return ({returns})")
    namespace: dict = {}
    exec("\n".join(lines), namespace)
    return namespace["_cycle"]


def _seed_bits(seed: int, width: BitWidth) -> tuple[int, ...]:
    k = width.k
    return tuple((seed >> (k - 1 - i)) & 1 for i in range(k))


def simulate_cycle(
    netlist: Netlist, state: SimState, load: bool, seed: int = 0
) -> SimState:
    """Advance one clock: settle combinational nets, then latch all DFFs.

    With load true the multiplexer routes the external seed word into
    every flip-flop; otherwise the next-state logic drives them.
    """
    width = netlist.width
    if len(state.bits) != width.k:
        raise ValueError(f"state has {len(state.bits)} bits, expected {width.k}")
    seed = check_word(seed, width)
    cycle = _compiled_cycle(netlist)
    new_bits = cycle(state.bits, 1 if load else 0, _seed_bits(seed, width))
    return SimState(bits=new_bits, cycle=state.cycle + 1)


def run(netlist: Netlist, seed: int, n: int) -> list[int]:
    """Load the seed, clock n cycles, and return the n + 1 register words.

    Bit-for-bit equal to the word model: run(netlist, w0, n) matches
    iterate(MapConfig(width), w0, n) for netlists built here.
    """
    if n < 1:
        raise ValueError(f"need at least one cycle, got n={n}")
    width = netlist.width
    seed = check_word(seed, width)
    cycle = _compiled_cycle(netlist)
    seed_bits = _seed_bits(seed, width)
    bits = cycle((0,) * width.k, 1, seed_bits)
    words = [_bits_to_word(bits)]
    for _ in range(n):
        bits = cycle(bits, 0, seed_bits)
        words.append(_bits_to_word(bits))
    return words


def _bits_to_word(bits) -> int:
    value = 0
    for bit in bits:
        value = (value << 1) | bit
    return value


def export_text(netlist: Netlist) -> str:
    """Serialize to the line format `KIND id out_net in_net_1 [in_net_2 ...]`.

    The first line is `WIDTH k`.  Multi-output elements (the mux) join
    their output nets with commas into the single out_net token, so the
    format stays one element per line and parses back unambiguously.
    """
    lines = [f"WIDTH {netlist.width.k}"]
    for el in netlist.elements:
        outs = ",".join(el.outputs)
        ins = " ".join(el.inputs)
        lines.append(f"{el.kind} {el.id} {outs} {ins}")
    return "\n".join(lines) + "\n"


def parse_text(text: str) -> Netlist:
    """Rebuild a netlist from its text export.

    Expects exactly one multiplexer; its first input is the load select
    and the next k inputs are the seed nets.  Undriven nets other than
    those are treated as constant zeros.
    """
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("WIDTH "):
        raise StructuralError("missing WIDTH header line")
    try:
        width = BitWidth(int(lines[0].split()[1]))
    except (IndexError, ValueError) as exc:
        raise StructuralError(f"bad WIDTH header: {lines[0]!r}") from exc

    elements = []
    nets: list[str] = []
    seen = set()

    def note(net: str) -> None:
        if net not in seen:
            seen.add(net)
            nets.append(net)

    for line in lines[1:]:
        parts = line.split()
        if len(parts) < 4:
            raise StructuralError(f"short element line: {line!r}")
        kind, el_id, outs = parts[0], parts[1], tuple(parts[2].split(","))
        ins = tuple(parts[3:])
        elements.append(Element(el_id, kind, ins, outs))
        for net in outs + ins:
            note(net)

    muxes = [el for el in elements if el.kind == MUX]
    if len(muxes) != 1:
        raise StructuralError(f"expected exactly one MUX, found {len(muxes)}")
    mux = muxes[0]
    half = len(mux.outputs)
    load_select = mux.inputs[0]
    seed_inputs = mux.inputs[1 : 1 + half]

    driven = {out for el in elements for out in el.outputs}
    zero_nets = tuple(
        net
        for net in nets
        if net not in driven and net not in seed_inputs and net != load_select
    )
    netlist = Netlist(
        width=width,
        elements=tuple(elements),
        nets=tuple(nets),
        seed_inputs=seed_inputs,
        load_select=load_select,
        zero_nets=zero_nets,
    )
    validate_structure(netlist)
    return netlist

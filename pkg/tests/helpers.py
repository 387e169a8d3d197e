import random
from pathlib import Path

from hypothesis import strategies as st

from qkont.circuit import CCX, Circuit, Const, H, Wire

ROOT = Path(__file__).resolve().parent.parent
CIRCUITS = ROOT / "circuits"
GOLDEN = Path(__file__).resolve().parent / "golden"


def random_circuit(rng: random.Random, n_min: int = 1, n_max: int = 6, max_gates: int = 12) -> Circuit:
    n = rng.randint(n_min, n_max)
    gates = []
    for _ in range(rng.randint(0, max_gates)):
        if n < 2 or rng.random() < 0.4:
            gates.append(H(rng.randrange(n)))
            continue
        wires = rng.sample(range(n), min(n, 3))
        targ = wires[0]
        ctrls = []
        for w in wires[1:3]:
            ctrls.append(Wire(w) if rng.random() < 0.8 else Const(rng.random() < 0.8))
        while len(ctrls) < 2:
            ctrls.append(Const(True))
        gates.append(CCX(ctrls[0], ctrls[1], targ))
    return Circuit(n, gates)


def random_state(rng: random.Random, n: int):
    return tuple(rng.randint(0, 1) for _ in range(n))


@st.composite
def circuits(draw, max_qubits=6, max_gates=12):
    seed = draw(st.integers(0, 2**32 - 1))
    rng = random.Random(seed)
    c = random_circuit(rng, 1, max_qubits, max_gates)
    return c, random_state(rng, c.qubit_count)

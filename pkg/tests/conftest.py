import pytest

from sccheck import ParamSpace, SymMatrix, SystemDef, compose_parallel

# Double-pendulum stiffness entries, shared between tests and fixture files.
K12 = "3*g*(z1+2*z2+2*z3)/(z4*(4*z1+3*z2+12*z3))"
K13 = "-(9*z2*g)/(2*z4*(4*z1+3*z2+12*z3))"
K22 = "-(9*g*(z1+2*z2+2*z3))/(2*z5*(4*z1+3*z2+12*z3))"
K23 = "-(3*g*(z1+3*z2+3*z3))/(z5*(4*z1+3*z2+12*z3))"
K17 = "3*(2*z1+z2+4*z3)/(2*z4*(4*z1+3*z2+12*z3))"
K27 = "-(3*z1)/(2*z5*(4*z1+3*z2+12*z3))"

PENDULUM_DOC = {
    "name": "pendulum",
    "parameters": ["z1", "z2", "z3", "z4", "z5", "g"],
    "A": [
        ["0", "0", "0", "1", "0", "0"],
        ["0", "0", "0", "0", "1", "0"],
        ["0", "0", "0", "0", "0", "1"],
        ["0", "0", "0", "0", "0", "0"],
        ["0", K12, K13, "0", "0", "0"],
        ["0", K22, K23, "0", "0", "0"],
    ],
    "B": [["0"], ["0"], ["0"], ["1"], [K17], [K27]],
}


@pytest.fixture(scope="session")
def ex1_space():
    return ParamSpace(["z1", "z2", "z3"])


@pytest.fixture(scope="session")
def sigma1(ex1_space):
    return SystemDef(
        "sigma1",
        ex1_space,
        SymMatrix.parse(ex1_space, [["z1", "1"], ["0", "z2"]]),
        SymMatrix.parse(ex1_space, [["0", "0"], ["z3", "1"]]),
    )


@pytest.fixture(scope="session")
def sigma2(ex1_space):
    return SystemDef(
        "sigma2",
        ex1_space,
        SymMatrix.parse(ex1_space, [["1", "1", "0"], ["0", "0", "1"], ["1", "0", "0"]]),
        SymMatrix.parse(ex1_space, [["z1", "0"], ["0", "1"], ["0", "0"]]),
    )


@pytest.fixture(scope="session")
def example1(sigma1, sigma2):
    """Parallel composite of the two bench subsystems (5 states, 2 inputs)."""
    return compose_parallel([sigma1, sigma2])


@pytest.fixture(scope="session")
def ex2_space():
    return ParamSpace(["z1", "z2", "z3", "z4", "z5", "g"])


@pytest.fixture(scope="session")
def pendulum(ex2_space):
    return SystemDef(
        "pendulum",
        ex2_space,
        SymMatrix.parse(ex2_space, PENDULUM_DOC["A"]),
        SymMatrix.parse(ex2_space, PENDULUM_DOC["B"]),
    )


@pytest.fixture(scope="session")
def bridge_space():
    return ParamSpace(["R1", "R2", "R3", "R4", "L", "C"])


@pytest.fixture(scope="session")
def bridge(bridge_space):
    """RLC bridge network: 2 states (inductor current, capacitor voltage)."""
    A = SymMatrix.parse(bridge_space, [
        ["-(R1*R2/(R1+R2) + R3*R4/(R3+R4))/L", "(R1/(R1+R2) - R3/(R3+R4))/L"],
        ["(R2/(R1+R2) - R4/(R3+R4))/C", "-(1/(R1+R2) - 1/(R3+R4))/C"],
    ])
    B = SymMatrix.parse(bridge_space, [["1/L"], ["0"]])
    return SystemDef("bridge", bridge_space, A, B)


@pytest.fixture(scope="session")
def unit_system(ex1_space):
    """One-state integrator-with-drift: x' = z1 x + u."""
    return SystemDef(
        "unit",
        ex1_space,
        SymMatrix.parse(ex1_space, [["z1"]]),
        SymMatrix.parse(ex1_space, [["1"]]),
    )


@pytest.fixture(scope="session")
def duplicated_modes(ex1_space):
    """Two identical drift modes reachable through one shared input column."""
    return SystemDef(
        "duplicated",
        ex1_space,
        SymMatrix.parse(ex1_space, [["z1", "0"], ["0", "z1"]]),
        SymMatrix.parse(ex1_space, [["1"], ["0"]]),
    )

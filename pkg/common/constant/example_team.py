from common.models import CausalTeam, FunctionComponent, Signature

# 经典示例：U → X → Y，Z 依赖 U、X、Y
example_ranges = {
    "U": (0, 1),
    "X": (0, 1),
    "Y": (1, 2),
    "Z": (2, 3, 4, 5, 6),
}

example_mechanisms = {
    "X": (("U",), lambda u: int(u)),
    "Y": (("X",), lambda x: int(x) + 1),
    "Z": (("U", "X", "Y"), lambda u, x, y: 2 * int(y) + int(x) + int(u)),
}

example_rows = [
    (0, 0, 1, 2),
    (1, 1, 2, 6),
]


def example_signature() -> Signature:
    return Signature.of(example_ranges)


def example_function_component() -> FunctionComponent:
    return FunctionComponent.from_functions(example_signature(), example_mechanisms)


def example_team() -> CausalTeam:
    return CausalTeam.of(example_function_component(), example_rows)

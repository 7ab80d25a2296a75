from pathlib import Path

import pytest

from common.constant.example_team import example_function_component, example_signature, example_team
from common.models import FunctionComponent, Signature
from common.workspace import load

DATA_DIR = Path(__file__).resolve().parent.parent / "data"


@pytest.fixture
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture
def sig1() -> Signature:
    """单个二值变量"""
    return Signature.of({"X": (0, 1)})


@pytest.fixture
def sig2() -> Signature:
    """两个二值变量"""
    return Signature.of({"X": (0, 1), "Y": (0, 1)})


@pytest.fixture
def copy_fc(sig2) -> FunctionComponent:
    """Y := X"""
    return FunctionComponent.from_tables(sig2, {"Y": (("X",), {("0",): "0", ("1",): "1"})})


@pytest.fixture
def flip_fc(sig2) -> FunctionComponent:
    """Y := 1 - X"""
    return FunctionComponent.from_tables(sig2, {"Y": (("X",), {("0",): "1", ("1",): "0"})})


@pytest.fixture
def example_sig() -> Signature:
    return example_signature()


@pytest.fixture
def example_fc():
    return example_function_component()


@pytest.fixture
def team_t():
    return example_team()


@pytest.fixture
def workspace():
    return load(DATA_DIR / "example.ws")

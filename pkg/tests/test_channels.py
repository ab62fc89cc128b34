import pytest

from phasenorm import CG, Amplifier, Attenuator, ChannelSpec, Displacement, Rotation


def test_cg_is_half_attenuator_then_double_amplifier():
    assert CG.elements == (Attenuator(0.5), Amplifier(2.0))
    assert CG == ChannelSpec((Attenuator(0.5), Amplifier(2.0)))


@pytest.mark.parametrize("bad", [0.0, -0.1, 1.0001])
def test_attenuator_bounds(bad):
    with pytest.raises(ValueError):
        Attenuator(bad)


def test_attenuator_allows_unity():
    assert Attenuator(1.0).transmittivity == 1.0


@pytest.mark.parametrize("bad", [0.99, 0.0, -2.0])
def test_amplifier_bounds(bad):
    with pytest.raises(ValueError):
        Amplifier(bad)


def test_then_concatenates():
    a = ChannelSpec((Rotation(0.3),))
    b = ChannelSpec((Displacement(1j), Attenuator(0.5)))
    assert a.then(b).elements == (Rotation(0.3), Displacement(1j), Attenuator(0.5))


def test_unknown_element_rejected():
    with pytest.raises(TypeError):
        ChannelSpec(("loss",))

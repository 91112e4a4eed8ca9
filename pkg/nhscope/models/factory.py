"""
Model factory: turns a ModelSpec into a Hamiltonian
"""

from typing import Callable, Dict, List

from nhscope.config import LATTICE_VARIANTS, ModelSpec, ModelVariant
from nhscope.exceptions import InvalidSpecError
from nhscope.models.base import Hamiltonian
from nhscope.models.bloch import build_pt_ssh_bloch, build_two_level
from nhscope.models.lattice import build_nonreciprocal_ssh, build_quasicrystal, build_sturm_liouville_chain

Builder = Callable[[ModelSpec], Hamiltonian]


def _ssh(spec: ModelSpec) -> Hamiltonian:
    return build_nonreciprocal_ssh(spec.param("t1"), spec.param("t2"), spec.param("g"),
                                   spec.size, spec.boundary)


def _quasicrystal(spec: ModelSpec) -> Hamiltonian:
    return build_quasicrystal(spec.param("JR"), spec.param("JL"), spec.param("V"),
                              int(spec.param("alpha_num")), int(spec.param("alpha_den")),
                              spec.size, spec.boundary)


def _sturm_liouville(spec: ModelSpec) -> Hamiltonian:
    return build_sturm_liouville_chain(spec.param("t0"), spec.param("g"), spec.size, spec.boundary)


def _two_level(spec: ModelSpec) -> Hamiltonian:
    return build_two_level(spec.param("gamma"))


def _pt_ssh(spec: ModelSpec) -> Hamiltonian:
    return build_pt_ssh_bloch(spec.param("u"), spec.param("v"), spec.param("w"), spec.param("k"))


class ModelFactory:
    """Registry of builders keyed by model variant"""

    _builders: Dict[ModelVariant, Builder] = {
        ModelVariant.SSH: _ssh,
        ModelVariant.QUASICRYSTAL: _quasicrystal,
        ModelVariant.STURM_LIOUVILLE: _sturm_liouville,
        ModelVariant.TWO_LEVEL: _two_level,
        ModelVariant.PT_SSH: _pt_ssh,
    }

    @classmethod
    def build(cls, spec: ModelSpec) -> Hamiltonian:
        """Build the Hamiltonian a spec describes"""
        builder = cls._builders.get(spec.variant)
        if builder is None:
            raise InvalidSpecError(
                f"No builder for model '{spec.variant.value}'; external matrices are loaded from file"
            )
        if spec.variant in LATTICE_VARIANTS and (spec.size is None or spec.boundary is None):
            raise InvalidSpecError(f"Model '{spec.variant.value}' needs a size and a boundary")
        return builder(spec)

    @classmethod
    def get_supported_variants(cls) -> List[str]:
        return [variant.value for variant in cls._builders]


def build(spec: ModelSpec) -> Hamiltonian:
    return ModelFactory.build(spec)

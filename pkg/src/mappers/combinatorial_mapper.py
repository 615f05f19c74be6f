# combinatorial_mapper.py - First 2^p1 combinadic subsets, ascending order
from .base_mapper import BaseMapper, SiFamily
from .combinadic import unrank_combination


class CombinatorialMapper(BaseMapper):
    """SI family J -> J-th K-subset for J in [0, 2^p1)"""

    kind = 'combinatorial'

    def build(self) -> SiFamily:
        return self._finish([unrank_combination(j, self.n, self.k) for j in range(self.family_size)])

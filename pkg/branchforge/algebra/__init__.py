"""
精确代数模块
数域、多元多项式、Gröbner 基与射影概形
"""

from .exactfield import QQ, FieldElement, Matrix, NumberField, cyclotomic_field, nf_create
from .groebner import Deadline, Ideal, PointSet, eliminate, groebner_basis, solve_zero_dim
from .multipoly import GREVLEX, LEX, MonomialOrder, Polynomial, Ring, format_poly, parse
from .schemes import AmbientSpace, RationalMap, Scheme, compute_image_degree, linear_system

__all__ = [
    'QQ',
    'FieldElement',
    'Matrix',
    'NumberField',
    'cyclotomic_field',
    'nf_create',
    'Deadline',
    'Ideal',
    'PointSet',
    'eliminate',
    'groebner_basis',
    'solve_zero_dim',
    'GREVLEX',
    'LEX',
    'MonomialOrder',
    'Polynomial',
    'Ring',
    'format_poly',
    'parse',
    'AmbientSpace',
    'RationalMap',
    'Scheme',
    'compute_image_degree',
    'linear_system'
]

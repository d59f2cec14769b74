"""Neural ideals of binary codes and the Type 1-6 receptive-field relations."""

from .code import (
    Codeword,
    CodeFormatError,
    NeuralCode,
    bitflip_code,
    enumerate_codes,
    format_code,
    parse_code,
    support,
)
from .ideal import (
    BudgetExceeded,
    GroebnerBasis,
    IdealPresentation,
    Membership,
    buchberger,
    code_groebner_basis,
    member_I,
    member_J,
    neural_ideal_generators,
    reduce,
    s_polynomial,
    span_certificate,
)
from .polyring import (
    MonomialOrder,
    Polynomial,
    PolynomialSyntaxError,
    PseudoMonomial,
    bitflip_poly,
    char_poly,
    compare,
    evaluate,
    expand,
    format_poly,
    parse_poly,
)
from .realization import Realization, code_of_realization, realize, region
from .relations import (
    RelationKind,
    RelationParams,
    RelationVerdict,
    check_relation,
    relation_polynomial,
    rhs_holds,
    scan_relations,
)

__version__ = "0.1.0"

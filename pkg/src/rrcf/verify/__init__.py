"""Two-level numeric certificates for identities and theorem pipelines."""

from .certificate import CERTIFIED, INCONCLUSIVE, REFUTED, SUPPORTED, Certificate, CertificateWriter, certify
from .checks import check_companion, check_icosahedral, check_order25, check_recursions, yi_map
from .theorems import THEOREM_IDS, TheoremBundle, reproduce_all, reproduce_theorem

__all__ = [
    "CERTIFIED",
    "INCONCLUSIVE",
    "REFUTED",
    "SUPPORTED",
    "THEOREM_IDS",
    "Certificate",
    "CertificateWriter",
    "TheoremBundle",
    "certify",
    "check_companion",
    "check_icosahedral",
    "check_order25",
    "check_recursions",
    "reproduce_all",
    "reproduce_theorem",
    "yi_map",
]

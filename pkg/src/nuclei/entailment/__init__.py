"""Finite-carrier entailment relations, nuclei and conservation checks."""

from .algebra import (
    LocaleReport,
    MeetSemilattice,
    chain,
    check_locale_nucleus,
    lattices,
    locale_nucleus,
    substructure_system,
)
from .campaign import CampaignReport, random_nucleus, random_system, run_campaign
from .dense import dense_closure
from .nucleus import (
    ConservationReport,
    NucleusReport,
    check_nucleus,
    conservation_report,
    rule_holds,
    stability_axioms,
    strong_extension,
    weak_extension,
)
from .system import (
    MAX_CARRIER,
    CarrierTooLarge,
    EntailmentRelation,
    EntailmentSystem,
    NotALattice,
    NotANucleus,
    NucleusMap,
    RuleInstance,
    dump_system,
    entails,
    law_violations,
    load_system,
    saturate,
)

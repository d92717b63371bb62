"""Content packs: typed models, validation, and built-in content."""

from growthlab.packs.defaults import (
    PACKS_DIR_ENV,
    builtin_pack,
    list_packs,
    packs_directory,
    resolve_pack,
)
from growthlab.packs.model import (
    ABILITY_HACK_DISCOUNT,
    ABILITY_KINDS,
    ABILITY_PASSIVE_FOLLOWERS,
    ABILITY_REROLL,
    GAME_OF_GROWTH,
    GAMES,
    GROWTHOPOLY,
    PROBLEM,
    SKILL_CATEGORIES,
    SOLUTION,
    SPACE_BONUS,
    SPACE_KINDS,
    SPACE_PROB_SOLVE,
    SPACE_SKILL,
    SPACE_SLUSH,
    SPACE_START,
    SPACE_TRADE_FAIR,
    STARTUP_TYPE_NAMES,
    BonusCardDef,
    ContentPack,
    EmployeeAbility,
    EmployeeCardDef,
    EventCardDef,
    GogContent,
    GrowthopolyContent,
    HackCardDef,
    ProbSolveCardDef,
    SpaceDef,
    StartupTypeDef,
    parse_ratio,
    ratio_to_json,
    scale_cost,
    study_duration,
)
from growthlab.packs.validate import (
    UNREADABLE_RULES,
    Violation,
    load_pack,
    load_pack_file,
    validate_pack,
)

__all__ = [
    "ABILITY_HACK_DISCOUNT",
    "ABILITY_KINDS",
    "ABILITY_PASSIVE_FOLLOWERS",
    "ABILITY_REROLL",
    "GAME_OF_GROWTH",
    "GAMES",
    "GROWTHOPOLY",
    "PACKS_DIR_ENV",
    "PROBLEM",
    "SKILL_CATEGORIES",
    "SOLUTION",
    "SPACE_BONUS",
    "SPACE_KINDS",
    "SPACE_PROB_SOLVE",
    "SPACE_SKILL",
    "SPACE_SLUSH",
    "SPACE_START",
    "SPACE_TRADE_FAIR",
    "STARTUP_TYPE_NAMES",
    "UNREADABLE_RULES",
    "BonusCardDef",
    "ContentPack",
    "EmployeeAbility",
    "EmployeeCardDef",
    "EventCardDef",
    "GogContent",
    "GrowthopolyContent",
    "HackCardDef",
    "ProbSolveCardDef",
    "SpaceDef",
    "StartupTypeDef",
    "Violation",
    "builtin_pack",
    "list_packs",
    "load_pack",
    "load_pack_file",
    "packs_directory",
    "parse_ratio",
    "ratio_to_json",
    "resolve_pack",
    "scale_cost",
    "study_duration",
    "validate_pack",
]

"""Controller layer (CLI subcommands) for banalg."""

from .amenability_controller import (
    DeltaWeakAmenableCommand,
    DeltaWeakIdentityCommand,
    KernelLeftIdentityCommand,
    KernelRightIdentityCommand,
    PhiAmenableCommand,
)
from .base import BaseCommand
from .characters_controller import CharactersCommand
from .construct_controller import ConstructCommand
from .ideal_controller import CombineCommand, ExtendCharacterCommand
from .verify_controller import VerifyCommand

ALL_COMMANDS: list[type[BaseCommand]] = [
    CharactersCommand,
    DeltaWeakIdentityCommand,
    DeltaWeakAmenableCommand,
    PhiAmenableCommand,
    KernelRightIdentityCommand,
    KernelLeftIdentityCommand,
    ConstructCommand,
    CombineCommand,
    ExtendCharacterCommand,
    VerifyCommand,
]

__all__ = [
    "ALL_COMMANDS",
    "BaseCommand",
    "CharactersCommand",
    "CombineCommand",
    "ConstructCommand",
    "DeltaWeakAmenableCommand",
    "DeltaWeakIdentityCommand",
    "ExtendCharacterCommand",
    "KernelLeftIdentityCommand",
    "KernelRightIdentityCommand",
    "PhiAmenableCommand",
    "VerifyCommand",
]

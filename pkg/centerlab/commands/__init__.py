from .BreakdownCommand import BreakdownCommand
from .CenterCommand import CenterCommand
from .EnergyTestCommand import EnergyTestCommand
from .LedgerCommand import LedgerCommand
from .MeansCommand import MeansCommand
from .ModesCommand import ModesCommand
from .PlotCommand import PlotCommand
from .PlsCommand import PlsCommand
from .SynthCommand import SynthCommand

COMMANDS = {
    cls.name: cls
    for cls in (
        CenterCommand, MeansCommand, ModesCommand, LedgerCommand, EnergyTestCommand,
        BreakdownCommand, PlsCommand, SynthCommand, PlotCommand,
    )
}

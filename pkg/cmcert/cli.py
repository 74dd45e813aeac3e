"""Common cmcert CLI interface.

A centralized interface for accessing cmcert modules with CLI interfaces.
"""

import sys
import importlib


HELP = """usage: cmcert <command> [<args>]

cmcert constructs genus-2 CM points for cyclic quartic CM fields containing
a fixed real quadratic field, evaluates their theta constants, invariants and
heights with certified ball arithmetic, and checks explicit bounds on them.

cmcert is divided into several modules. Each module is accessible as a command
and has its own arguments.

Valid commands are:

    ~ Pipeline stages ~
    fields            Enumerate cyclic quartic CM fields up to a discriminant
    classgroup        Class groups and minimal-norm tables of a field database
    triples           Principally polarised CM triples of each field
    reduce            Period matrices reduced into the Siegel fundamental domain
    invariants        Theta constants, Igusa invariants and class polynomials
    heights           Archimedean parts and Faltings heights

    ~ Verification ~
    verify            Run the full pipeline and the inequality suites
    analytic          Smoothed ideal sums, residues and elementary lemmas
    bound             Evaluate the final discriminant bound for a field F

    ~ Reports ~
    report            Emit JSON, CSV and SVG reports from saved dossiers

Use 'cmcert help <command>' for information about the command's arguments."""


MODULES = {
    'fields': 'cmcert.field_enum',
    'classgroup': 'cmcert.classgroup',
    'triples': 'cmcert.polarize',
    'reduce': 'cmcert.siegel',
    'invariants': 'cmcert.invariants',
    'heights': 'cmcert.heights',
    'verify': 'cmcert.pipeline',
    'analytic': 'cmcert.analytic',
    'bound': 'cmcert.bound',
    'report': 'cmcert.report',
}


def _print_help():
    print(HELP)


def _main():
    if len(sys.argv) == 1:
        _print_help()
        sys.exit(1)

    command = sys.argv.pop(1)

    if command == 'help' or command == '--help':
        if len(sys.argv) == 2:
            command = sys.argv.pop(1)
            sys.argv.append('--help')
        else:
            _print_help()
            sys.exit(0)

    if command in MODULES:
        # pylint: disable=protected-access
        sys.argv[0] += ' ' + command
        module_name = MODULES[command]
        module = importlib.import_module(module_name)
        module._main()
    else:
        print("cmcert: {} is not a cmcert command. See 'cmcert --help'."
              .format(command), file=sys.stderr)
        sys.exit(1)


if __name__ == "__main__":
    _main()

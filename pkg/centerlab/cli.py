"""Superficie de línea de comandos: argv -> configuración validada -> subcomando -> código de salida."""
import argparse
from typing import Any, Callable, Dict, List, Optional, TextIO

from .commands import COMMANDS
from .Context import Context
from .lib.errors import UsageError
from .lib.runner import EXIT_CONFIG, EXIT_DEPS, EXIT_USAGE, emit_error, run

PLOT_KINDS = ("heatmap", "curves", "modes", "scatter_matrix", "energy_test", "energy_breakdown")
SYNTH_KINDS = ("toy", "two-block", "gaussian", "two-trait")


class _Parser(argparse.ArgumentParser):
    """argparse sin sys.exit en errores de uso."""

    def error(self, message):
        raise UsageError(message, meta={"usage": self.format_usage().strip()})


def _input_flags() -> argparse.ArgumentParser:
    p = _Parser(add_help=False)
    p.add_argument("--transform", default=None, help="none | log10 | log10_plus1")
    p.add_argument("--transpose", action="store_true", help="el fichero tiene los objetos en filas")
    p.add_argument("--header", action="store_true", help="primera fila con etiquetas de objeto")
    p.add_argument("--index", action="store_true", help="primera columna con etiquetas de rasgo")
    p.add_argument("--delimiter", default=",")
    return p


def _output_flags() -> argparse.ArgumentParser:
    p = _Parser(add_help=False)
    p.add_argument("--out-dir", default=None, help="directorio de salida (por defecto $CENTERLAB_OUT_DIR o .)")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="centerlab", description="Análisis de matrices de datos sensible al centrado.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    inputs, outputs = _input_flags(), _output_flags()

    def add(name: str, help: str, with_input: bool = True) -> argparse.ArgumentParser:
        parents = [inputs, outputs] if with_input else [outputs]
        p = sub.add_parser(name, help=help, parents=parents)
        if with_input and name != "pls":
            p.add_argument("input", help="CSV de entrada")
        return p

    p = add("center", "centra la matriz")
    p.add_argument("--centering", default=None)

    add("means", "medias y matrices de medias")

    p = add("modes", "modos de variación por SVD")
    p.add_argument("--centering", default=None)
    p.add_argument("--rank", type=int, default=None)

    add("ledger", "tabla ortogonal / incorrelado por centrado")

    p = add("energy-test", "test de energía en la dirección constante")
    p.add_argument("-B", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--threshold", type=float, default=None)
    p.add_argument("--omit-null", action="store_true")
    p.add_argument("--jobs", type=int, default=None)

    p = add("breakdown", "energía por componente antes y después del doble centrado")
    p.add_argument("-k", type=int, default=None)

    p = add("pls", "PLS de dos bloques")
    p.add_argument("input1", help="CSV del bloque 1")
    p.add_argument("input2", help="CSV del bloque 2")
    p.add_argument("--centering", default=None)
    p.add_argument("-K", type=int, default=None)
    p.add_argument("--method", default=None, help="svd | sequential")
    p.add_argument("--truth", default=None, help="truth.json de synth two-block")

    p = add("synth", "genera datos sintéticos", with_input=False)
    p.add_argument("kind", choices=SYNTH_KINDS)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("-d", type=int, default=None)
    p.add_argument("--d2", type=int, default=None)
    p.add_argument("-n", type=int, default=None)
    p.add_argument("--noise", type=float, default=None)

    # la posición KIND va antes que IN
    p = sub.add_parser("plot", help="gráfico SVG", parents=[outputs, inputs])
    p.add_argument("kind", choices=PLOT_KINDS)
    p.add_argument("input", help="CSV de entrada")
    p.add_argument("--centering", default=None)
    p.add_argument("--labels", default=None)
    p.add_argument("--color-limit", type=float, default=None)
    p.add_argument("--title", default=None)
    p.add_argument("--components", type=int, default=None)
    p.add_argument("--orientation", choices=("objects", "traits"), default=None, help="curvas por objeto o por rasgo")
    p.add_argument("--x-label", default=None)
    p.add_argument("--y-label", default=None)
    p.add_argument("--no-connect", dest="connect", action="store_const", const=False, default=None)
    p.add_argument("--no-mean", dest="show_mean", action="store_const", const=False, default=None)
    p.add_argument("-B", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--threshold", type=float, default=None)
    p.add_argument("-k", type=int, default=None)
    return parser


def _given(args: argparse.Namespace, *names: str, rename: Optional[Dict[str, str]] = None) -> Dict[str, Any]:
    """Solo los flags presentes: lo demás lo completan los defaults de Pydantic."""
    rename = rename or {}
    out = {}
    for name in names:
        value = getattr(args, name, None)
        if value is not None:
            out[rename.get(name, name)] = value
    return out


def _matrix_file(args: argparse.Namespace, path: str) -> Dict[str, Any]:
    return {
        "path": path,
        "transpose": args.transpose,
        "header": args.header,
        "index": args.index,
        "delimiter": args.delimiter,
    }


def _with_input(args: argparse.Namespace, *names: str, rename: Optional[Dict[str, str]] = None) -> Dict[str, Any]:
    payload = {"input": _matrix_file(args, args.input)}
    payload.update(_given(args, "transform", *names, rename=rename))
    return payload


_PAYLOADS: Dict[str, Callable[[argparse.Namespace], Dict[str, Any]]] = {
    "center": lambda a: _with_input(a, "centering"),
    "means": lambda a: _with_input(a),
    "modes": lambda a: _with_input(a, "centering", "rank"),
    "ledger": lambda a: _with_input(a),
    "energy-test": lambda a: {
        **_with_input(a, "B", "seed", "threshold", "jobs"),
        "omit_null": a.omit_null,
    },
    "breakdown": lambda a: _with_input(a, "k"),
    "pls": lambda a: {
        "input1": _matrix_file(a, a.input1),
        "input2": _matrix_file(a, a.input2),
        **_given(a, "transform", "centering", "K", "method", "truth"),
    },
    "synth": lambda a: _given(a, "kind", "seed", "d", "d2", "n", "noise"),
    "plot": lambda a: _with_input(
        a, "kind", "centering", "labels", "color_limit", "title", "components", "orientation",
        "x_label", "y_label", "connect", "show_mean", "B", "seed", "threshold", "k",
    ),
}


def run_command(argv: Optional[List[str]] = None, stdout: TextIO = None, context: Optional[Context] = None) -> int:
    """Ejecuta un subcomando y devuelve el código de salida (0 éxito, 1 uso, 2 entorno,
    3 ejecución, 5 configuración inválida, 6 dependencias inválidas)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        emit_error({"system": "Uso incorrecto", "errors": [e.to_json()]})
        return EXIT_USAGE
    except SystemExit as e:
        # --help
        return int(e.code or 0)

    command = COMMANDS[args.command]
    payload = _PAYLOADS[args.command](args)
    ctx = context or Context(args.out_dir)
    deps = ctx.inject(command.deps_model())

    check = command.lookup_config(payload)
    if not check["ok"]:
        emit_error({"system": "Config inválida", "errors": check["errors"]})
        return EXIT_CONFIG

    check = command.lookup_deps(deps)
    if not check["ok"]:
        emit_error({"system": "Dependencias inválidas", "errors": check["errors"]})
        return EXIT_DEPS

    return run(command(payload, deps), stdout)

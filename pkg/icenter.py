import sys

from centerlab.cli import run_command


def main():
    if len(sys.argv) < 2:
        sys.stderr.write('{"system": "Error: falta el subcomando"}\n')
        sys.exit(1)
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()

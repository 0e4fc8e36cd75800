"""Allow `python -m hopfgeo <subcommand>`."""
from .cli import entry

if __name__ == "__main__":
    entry()

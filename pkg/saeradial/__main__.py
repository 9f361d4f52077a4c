"""Entry point for saeradial CLI when run as python -m saeradial"""

from saeradial.cli import app

if __name__ == "__main__":
    app()

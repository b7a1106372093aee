import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from palrich.words import Word


def W(text: str, alphabet=None) -> Word:
    return Word.parse(text, alphabet)

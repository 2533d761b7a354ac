"""
Muestras etiquetadas: alfabeto, palabras, lectura de los formatos
Abbadingo y de líneas, y estructura de prefijos.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from core.config.constants import (
    ABBADINGO_LABELS,
    ERROR_MESSAGES,
    LINES_COMMENT,
    LINES_LABELS,
    SAMPLE_FORMATS,
)
from core.utils.errors import ConflictingLabel, EmptyInput, MalformedHeader, UnknownSymbol

logger = logging.getLogger(__name__)

# Una palabra es la secuencia de índices de letras; () es la palabra vacía
Word = Tuple[int, ...]

# Pragma de comentario que fija el orden del alfabeto en el formato de líneas
ALPHABET_PRAGMA = '# alphabet:'

# Alfabeto por defecto cuando la entrada sólo contiene la palabra vacía
DEFAULT_LETTER = 'a'


@dataclass(frozen=True)
class Alphabet:
    """Alfabeto finito con orden fijo (define los índices l_1..l_L)"""

    letters: Tuple[str, ...]
    _index: Dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        letters = tuple(self.letters)
        if not letters:
            raise ValueError("El alfabeto necesita al menos una letra")
        for letter in letters:
            if not letter or any(ch.isspace() for ch in letter):
                raise ValueError(f"Letra inválida: {letter!r}")
        if len(set(letters)) != len(letters):
            raise ValueError(f"Letras repetidas en el alfabeto: {letters}")
        object.__setattr__(self, 'letters', letters)
        object.__setattr__(self, '_index', {letter: i for i, letter in enumerate(letters)})

    @classmethod
    def numeric(cls, size: int) -> 'Alphabet':
        """Alfabeto Abbadingo: enteros 0..size-1 en orden numérico"""
        return cls(tuple(str(i) for i in range(size)))

    @property
    def size(self) -> int:
        return len(self.letters)

    def index(self, symbol: str, line_no: Optional[int] = None) -> int:
        try:
            return self._index[symbol]
        except KeyError:
            raise UnknownSymbol(ERROR_MESSAGES['unknown_symbol'].format(symbol, line_no))

    def encode(self, symbols: Iterable[str]) -> Word:
        return tuple(self.index(s) for s in symbols)

    def format_word(self, word: Sequence[int], separator: Optional[str] = None) -> str:
        """Texto legible; letras de un carácter se concatenan, las demás con espacios"""
        if separator is None:
            separator = '' if all(len(letter) == 1 for letter in self.letters) else ' '
        return separator.join(self.letters[i] for i in word)


def _dedupe(words: Iterable[Word]) -> Tuple[Word, ...]:
    # dict conserva el orden de primera aparición
    return tuple(dict.fromkeys(tuple(w) for w in words))


@dataclass(frozen=True)
class LabeledSamples:
    """Par S = (S+, S-) sobre un alfabeto; el orden de las muestras se conserva"""

    alphabet: Alphabet
    positives: Tuple[Word, ...]
    negatives: Tuple[Word, ...]

    def __post_init__(self):
        positives = _dedupe(self.positives)
        negatives = _dedupe(self.negatives)

        for word in positives + negatives:
            for letter in word:
                if not 0 <= letter < self.alphabet.size:
                    raise UnknownSymbol(ERROR_MESSAGES['unknown_symbol'].format(letter, None))

        conflicts = set(positives) & set(negatives)
        if conflicts:
            word = min(conflicts, key=lambda w: (len(w), w))
            raise ConflictingLabel(ERROR_MESSAGES['conflicting_label'].format(
                self.alphabet.format_word(word)))

        object.__setattr__(self, 'positives', positives)
        object.__setattr__(self, 'negatives', negatives)

    @classmethod
    def from_strings(cls, positives: Iterable[str], negatives: Iterable[str],
                     alphabet: Optional[Sequence[str]] = None) -> 'LabeledSamples':
        """
        Construir muestras desde cadenas de letras de un carácter ('aab', '').

        El alfabeto se infiere por orden de primera aparición si no se indica.
        """
        positives = list(positives)
        negatives = list(negatives)
        if alphabet is None:
            seen = dict.fromkeys(ch for w in positives + negatives for ch in w)
            alphabet = tuple(seen) or (DEFAULT_LETTER,)
        sigma = Alphabet(tuple(alphabet))
        return cls(sigma,
                   tuple(sigma.encode(w) for w in positives),
                   tuple(sigma.encode(w) for w in negatives))

    def labeled_words(self) -> Iterator[Tuple[Word, bool]]:
        """Palabras en orden de muestra: primero S+, luego S-"""
        for word in self.positives:
            yield word, True
        for word in self.negatives:
            yield word, False

    @property
    def num_words(self) -> int:
        return len(self.positives) + len(self.negatives)


def parse_samples(text: str, format: str = 'lines') -> LabeledSamples:
    """
    Leer muestras etiquetadas.

    Args:
        text: contenido del archivo
        format: 'abbadingo' o 'lines'

    Returns:
        LabeledSamples validado
    """
    if format not in SAMPLE_FORMATS:
        raise ValueError(f"Formato no soportado: {format}. Use {SAMPLE_FORMATS}")

    if format == 'abbadingo':
        samples = _parse_abbadingo(text)
    else:
        samples = _parse_lines(text)

    logger.debug("Leídas %d positivas y %d negativas sobre |Σ|=%d",
                 len(samples.positives), len(samples.negatives), samples.alphabet.size)
    return samples


def _parse_abbadingo(text: str) -> LabeledSamples:
    lines = [(n, line.strip()) for n, line in enumerate(text.splitlines(), start=1) if line.strip()]
    if not lines:
        raise EmptyInput(ERROR_MESSAGES['empty_input'])

    header_no, header = lines[0]
    parts = header.split()
    if len(parts) != 2 or not all(p.isdigit() for p in parts):
        raise MalformedHeader(ERROR_MESSAGES['malformed_header'].format(header_no, header))
    num_words, alphabet_size = int(parts[0]), int(parts[1])
    if alphabet_size < 1:
        raise MalformedHeader(ERROR_MESSAGES['malformed_header'].format(header_no, header))

    alphabet = Alphabet.numeric(alphabet_size)
    positives: List[Word] = []
    negatives: List[Word] = []

    for line_no, line in lines[1:]:
        tokens = line.split()
        if len(tokens) < 2 or tokens[0] not in ABBADINGO_LABELS or not tokens[1].isdigit():
            raise MalformedHeader(ERROR_MESSAGES['malformed_line'].format(line_no, line))
        length = int(tokens[1])
        symbols = tokens[2:]
        if len(symbols) != length:
            raise MalformedHeader(ERROR_MESSAGES['malformed_line'].format(line_no, line))
        word = tuple(alphabet.index(s, line_no) for s in symbols)
        (positives if ABBADINGO_LABELS[tokens[0]] else negatives).append(word)

    if len(positives) + len(negatives) != num_words:
        raise MalformedHeader(ERROR_MESSAGES['malformed_header'].format(header_no, header),
                              detail=f"se declararon {num_words} palabras y hay "
                                     f"{len(positives) + len(negatives)}")
    if num_words == 0:
        raise EmptyInput(ERROR_MESSAGES['empty_input'])

    return LabeledSamples(alphabet, tuple(positives), tuple(negatives))


def _parse_lines(text: str) -> LabeledSamples:
    pragma: Optional[Tuple[str, ...]] = None
    labeled: List[Tuple[int, bool, List[str]]] = []
    first = True

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        # El pragma sólo cuenta en la primera línea no vacía
        if first and line.startswith(ALPHABET_PRAGMA):
            pragma = tuple(line[len(ALPHABET_PRAGMA):].split())
        first = False
        if line.startswith(LINES_COMMENT):
            continue
        tokens = line.split()
        if tokens[0] not in LINES_LABELS:
            raise MalformedHeader(ERROR_MESSAGES['malformed_line'].format(line_no, raw))
        labeled.append((line_no, LINES_LABELS[tokens[0]], tokens[1:]))

    if not labeled:
        raise EmptyInput(ERROR_MESSAGES['empty_input'])

    if pragma:
        alphabet = Alphabet(pragma)
    else:
        seen = dict.fromkeys(s for _, _, symbols in labeled for s in symbols)
        alphabet = Alphabet(tuple(seen) or (DEFAULT_LETTER,))

    positives: List[Word] = []
    negatives: List[Word] = []
    for line_no, label, symbols in labeled:
        word = tuple(alphabet.index(s, line_no) for s in symbols)
        (positives if label else negatives).append(word)

    return LabeledSamples(alphabet, tuple(positives), tuple(negatives))


def serialize_samples(samples: LabeledSamples, format: str = 'lines') -> str:
    """Inverso de parse_samples (el formato de líneas incluye el pragma del alfabeto)"""
    if format == 'abbadingo':
        out = [f"{samples.num_words} {samples.alphabet.size}"]
        for word, label in samples.labeled_words():
            symbols = ' '.join(samples.alphabet.letters[i] for i in word)
            out.append(f"{1 if label else 0} {len(word)} {symbols}".rstrip())
        return '\n'.join(out) + '\n'

    if format != 'lines':
        raise ValueError(f"Formato no soportado: {format}. Use {SAMPLE_FORMATS}")

    out = [f"{ALPHABET_PRAGMA} {' '.join(samples.alphabet.letters)}"]
    for word, label in samples.labeled_words():
        symbols = ' '.join(samples.alphabet.letters[i] for i in word)
        out.append(f"{'+' if label else '-'} {symbols}".rstrip())
    return '\n'.join(out) + '\n'


def word_prefixes(word: Sequence[int]) -> Iterator[Word]:
    """Todos los prefijos de una palabra, incluida la vacía"""
    for length in range(len(word) + 1):
        yield tuple(word[:length])


def prefixes(samples: LabeledSamples) -> Tuple[Word, ...]:
    """
    Prefijos de S+ ∪ S- sin repetidos, ordenados por (longitud, orden lexicográfico
    de índices de letra). Siempre contiene ε.
    """
    found = {()}
    for word, _ in samples.labeled_words():
        found.update(word_prefixes(word))
    return tuple(sorted(found, key=lambda w: (len(w), w)))

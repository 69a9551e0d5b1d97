"""Power notation for words, as used in the printed traces.

``ba^2b`` is ``baab`` and ``ab(ca)^2c`` is ``abcacac``.  Whitespace is ignored
so that words split across a line (``ab(ca)^2c bca^2c abca``) can be pasted
verbatim.
"""

import re

_TOKEN = re.compile(r"\s*(?:(\()|(\))|\^(\d+)|([^\s()^]))")


def expand_word(text: str) -> str:
    """Expand ``^k`` powers (on single letters or parenthesised groups)."""
    stack = [[]]
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ValueError(f"cannot parse word {text!r} at offset {pos}")
        pos = m.end()
        opening, closing, power, letter = m.groups()
        if opening:
            stack.append([])
        elif closing:
            if len(stack) == 1:
                raise ValueError(f"unbalanced ')' in {text!r}")
            group = "".join(stack.pop())
            stack[-1].append(group)
        elif power is not None:
            if not stack[-1]:
                raise ValueError(f"'^{power}' with nothing to raise in {text!r}")
            stack[-1][-1] = stack[-1][-1] * int(power)
        else:
            stack[-1].append(letter)
    if len(stack) != 1:
        raise ValueError(f"unbalanced '(' in {text!r}")
    return "".join(stack[0])


def compress_word(word: str) -> str:
    """Inverse of :func:`expand_word` for runs of one letter: ``baab`` -> ``ba^2b``."""
    out = []
    for m in re.finditer(r"(.)\1*", word):
        run = m.group(0)
        out.append(run[0] if len(run) == 1 else f"{run[0]}^{len(run)}")
    return "".join(out)

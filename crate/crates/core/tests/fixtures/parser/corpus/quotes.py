def triple_double():
    """Triple double quoted."""


def triple_single():
    '''Triple single quoted.'''
    return None


def single_double():
    "Single double quoted."
    return None


def single_single():
    'Single single quoted.'
    return None


def raw_prefix():
    r"""Matches \d+ digits, backslashes kept."""
    return r"\d+"


def unicode_prefix():
    u'''Unicode prefix is accepted.'''
    return 0


def escapes():
    "Tab:\tnewline:\nquote:\" done."
    return 1


def concatenated():
    "Part one, " "part two."
    return 2


def fstring_is_not_doc(x):
    f"""Value {x}."""
    return x


def bytes_is_not_doc():
    b"not a docstring"
    return 3


def empty_doc():
    """"""
    return 4


def non_ascii():
    """Renvoie la clé — naïve café ünïcödé."""
    return "é"

def example_function(param1, param2):
    """
    This is an example of a docstring
    for a Python function.

    Docstrings are enclosed in triple
    quotes and appear immediately
    after the function definition.
    """

    # Function implementation

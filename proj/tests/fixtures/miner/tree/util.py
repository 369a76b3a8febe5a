def util_one(path):
    """Read a file and return its text."""
    with open(path) as handle:
        return handle.read()

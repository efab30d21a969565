"""Rewrite the golden reports of the built-in corpus. Review the diff before committing."""

from efixlab.scenario import write_golden

if __name__ == "__main__":
    for path in write_golden():
        print(path)

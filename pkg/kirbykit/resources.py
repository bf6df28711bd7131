import json
import os
import pathlib
from importlib.resources import files

corpus_env_variable = "KIRBYKIT_CORPUS"


def data_dir():
    return pathlib.Path(str(files("kirbykit") / "data"))


def corpus_dir():
    """directory of the shipped corpus, overridable by ``KIRBYKIT_CORPUS``"""
    override = os.environ.get(corpus_env_variable)
    if override:
        return pathlib.Path(override)

    return data_dir() / "corpus"


def corpus_file(name):
    return corpus_dir() / name


def load_template(name):
    path = data_dir() / "templates" / name
    with open(path) as f:
        return json.load(f)


# other names under which corpus scripts are cited
corpus_aliases = {"figure7_to_figure8.script": "figure7_to_T3.script"}


def resolve_corpus_path(path):
    """``path`` if it exists, else the corpus file of the same name

    Only bare names and ``corpus/<name>`` fall back to the corpus.
    """
    path = pathlib.Path(path)
    if path.is_file() or path.parent.name not in ("", "corpus"):
        return path

    candidate = corpus_file(corpus_aliases.get(path.name, path.name))
    return candidate if candidate.is_file() else path

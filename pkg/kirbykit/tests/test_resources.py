from kirbykit import resources
from kirbykit.handlebody import HandleStructure


def test_corpus_dir():
    directory = resources.corpus_dir()

    assert directory.name == "corpus"
    assert (directory / "torus.kby").is_file()
    assert resources.corpus_file("torus.kby") == directory / "torus.kby"


def test_corpus_override(monkeypatch, tmp_path):
    monkeypatch.setenv(resources.corpus_env_variable, str(tmp_path))

    assert resources.corpus_dir() == tmp_path
    assert resources.corpus_file("cusp.kby") == tmp_path / "cusp.kby"


def test_empty_override(monkeypatch):
    monkeypatch.setenv(resources.corpus_env_variable, "")

    assert resources.corpus_dir() == resources.data_dir() / "corpus"


def test_shipped_structures():
    paths = sorted(resources.corpus_dir().glob("*.kby"))

    assert len(paths) == 10
    assert all(isinstance(HandleStructure.load(path), HandleStructure) for path in paths)


def test_load_template():
    data = resources.load_template("slice_expansion.json")

    assert data["templates"][0]["framed"]["id"] == "{id}_m"

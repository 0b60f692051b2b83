"""Smoke test for the tdembed_py extension.

Build first:
    cargo build --release -p tdembed-python --features extension-module
then run `python3 python/smoke_test.py`.
"""

import importlib.util
import json
import pathlib
import shutil
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parent.parent


def load():
    for profile in ("release", "debug"):
        for name in ("libtdembed_py.so", "libtdembed_py.dylib", "tdembed_py.dll"):
            lib = ROOT / "target" / profile / name
            if lib.exists():
                suffix = ".pyd" if name.endswith(".dll") else ".so"
                dest = pathlib.Path(tempfile.mkdtemp()) / f"tdembed_py{suffix}"
                shutil.copy(lib, dest)
                spec = importlib.util.spec_from_file_location("tdembed_py", dest)
                mod = importlib.util.module_from_spec(spec)
                spec.loader.exec_module(mod)
                return mod
    sys.exit("extension not built; see the module docstring")


def main():
    td = load()

    q8 = json.loads(td.catalog("Q8"))
    assert q8["order"] == 8, q8

    code, report = td.run_command(["embed", "construct", "--type", "multiplicative", "--group", "Q8", "--dim", "2"])
    assert code == 0, report
    emb = json.loads(report)
    assert len(emb["points"]) == 24

    verdict = json.loads(td.verify(report))
    assert verdict["ok"] and verdict["frame"] == "triangle", verdict

    emb["blocks"][0], emb["blocks"][1] = emb["blocks"][1], [emb["blocks"][0][0], emb["blocks"][1][1], emb["blocks"][0][2]]
    try:
        td.verify(json.dumps(emb))
    except ValueError:
        pass
    else:
        raise AssertionError("tampered embedding verified")

    code, report = td.run_command(["oracle", "scan", "--q", "11", "--frame", "triangle", "--n", "3"])
    assert code == 3, (code, report)

    print("ok")


if __name__ == "__main__":
    main()

"""Driving the command-line interface and the tuning service end to end.

Writes the demo scenario to a temporary directory, runs ``extract``,
``mask`` and ``plot`` through the CLI entry point, then starts the HTTP
session service, edits coefficients through the JSON API exactly as the
browser UI does, and commits the result.
"""

import json
import tempfile
import threading
import urllib.request
from pathlib import Path

from groupmask.cli import main
from groupmask.config import load_config
from groupmask.datasets import ITALY_2001, build_demo_microfile
from groupmask.microdata import save_microfile
from groupmask.pipeline import build_context
from groupmask.service import make_server

root = Path(tempfile.mkdtemp(prefix="groupmask-demo-"))
print(f"working in {root}")

save_microfile(build_demo_microfile(), str(root / "italy.csv"))
config = {
    "microfile": "italy.csv",
    "attributes": [
        {"name": "SEX", "codes": ["1", "2"]},
        {"name": "AGE", "codes": ["22"]},
        {"name": "REGNIT", "codes": list(ITALY_2001.regions)},
    ],
    "parameter": {"attribute": "REGNIT", "order": list(ITALY_2001.regions)},
    "main": {"attributes": ["SEX", "AGE"], "combinations": [["1", "22"]], "label": "young males"},
    "subordinate": {"attributes": ["SEX", "AGE"], "combinations": [["2", "22"]],
                    "label": "young females"},
    "superset": {"kind": "explicit", "quantities": list(ITALY_2001.population)},
    "basis": "db1",
    "level": 2,
    "seed": 20100627,
}
(root / "config.json").write_text(json.dumps(config, indent=2))
plan = {"basis": "db1", "level": 2, "alpha": 1.0, "seed": 20100627,
        "coefficients": [0.0032, 0.0018, 0.0019, 0.0018, 0.0009]}
(root / "plan.json").write_text(json.dumps(plan, indent=2))

print("\n$ groupmask extract ...")
main(["extract", "--config", str(root / "config.json"), "--out", str(root / "signals")])

print("\n$ groupmask mask ...")
main(["mask", "--config", str(root / "config.json"), "--plan", str(root / "plan.json"),
      "--out", str(root / "bundle")])

print("\n$ groupmask plot ...")
main(["plot", "--in", str(root / "signals" / "delta.csv"),
      "--out", str(root / "delta.svg")])

# --- the service, driven the way the browser UI drives it ---
extraction = build_context(load_config(root / "config.json"))
server = make_server(extraction, port=0, outdir=root / "committed")
threading.Thread(target=server.serve_forever, daemon=True).start()
base = f"http://127.0.0.1:{server.server_address[1]}"
print(f"\nservice listening at {base}")


def call(path, payload=None):
    if payload is None:
        request = urllib.request.Request(base + path)
    else:
        request = urllib.request.Request(
            base + path, data=json.dumps(payload).encode(),
            headers={"Content-Type": "application/json"}, method="POST",
        )
    with urllib.request.urlopen(request) as response:
        return json.loads(response.read().decode())


state = call("/api/state")
print(f"GET /api/state -> revision {state['revision']}, "
      f"peak at index {state['extremums'][0]['index']}")

reply = call("/api/coefficients", {
    "revision": state["revision"],
    "a_tilde": plan["coefficients"],
    "alpha": 1.0,
})
print(f"POST /api/coefficients -> revision {reply['revision']}, "
      f"feasible={reply['feasible']}, "
      f"new difference head {[round(v, 4) for v in reply['delta_tilde'][:4]]}")

done = call("/api/commit", {"revision": reply["revision"]})
print(f"POST /api/commit -> bundle at {done['outputs']['bundle']}")

server.shutdown()
server.server_close()
print("\nall outputs under", root)

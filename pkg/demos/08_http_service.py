"""The HTTP facade: catalog discovery, uploads, and benchmark runs."""

import json
import urllib.request

from tsbench.runner import parse_results_csv
from tsbench.service import BenchService

service = BenchService(port=0).start()
base = f"http://127.0.0.1:{service.port}"
print("serving on", base)

# Catalog discovery drives clients: operators with schemas and modes.
operators = json.loads(urllib.request.urlopen(base + "/api/operators").read())
print("\noperators:", ", ".join(o["name"] for o in operators))
sax = next(o for o in operators if o["name"] == "sax")
print("sax params:", [(p["name"], p["type"], p["default"]) for p in sax["params"]])

datasets = json.loads(urllib.request.urlopen(base + "/api/datasets").read())
print("datasets:", [(d["id"], d["n_series"], d["n_rows"]) for d in datasets])

# Upload a custom dataset, then benchmark against it.
csv_body = b"timestamp,temp,load\n0,20.5,1.0\n1000,21.0,2.0\n2000,20.8,1.5\n3000,21.4,2.2\n"
req = urllib.request.Request(base + "/api/datasets/factory", data=csv_body,
                             method="POST")
print("\nupload:", json.loads(urllib.request.urlopen(req).read()))

url = (base + "/api/run?engines=row_store,column_store&operator=moving_average"
              "&dataset=factory&rows=4&cols=2&w=2&reps=3")
body = urllib.request.urlopen(url).read()
results, rec = parse_results_csv(body)
print(f"\nrun returned {len(results)} rows; winner: {rec.winner}")
for line in body.decode().splitlines()[:3]:
    print("   ", line)

service.stop()
print("\ndone")

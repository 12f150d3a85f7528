#!/usr/bin/env python3
"""Train the toy model: deterministic weights digest plus Dice/IoU scores."""
import hashlib
import json
import os
import pathlib

import yaml

params = yaml.safe_load(open("params.yaml"))
epochs = int(params["train"]["epochs"])
learning_rate = str(params["train"]["learning_rate"])

with open(".counters", "a") as counters:
    counters.write(os.environ.get("AIMP_STAGE", "?") + "\n")

train = pathlib.Path("data/prepared/train.txt").read_bytes()
val = pathlib.Path("data/prepared/val.txt").read_bytes()

state = hashlib.sha256(train + learning_rate.encode())
weights = b""
for epoch in range(epochs):
    state.update(b"epoch-%d" % epoch)
    weights += state.digest()

pathlib.Path("models").mkdir(exist_ok=True)
pathlib.Path("models/model.bin").write_bytes(weights)

score = int.from_bytes(hashlib.sha256(weights + val).digest()[:4], "big")
dice = round(0.80 + (score % 1500) / 10000, 4)
iou = round(dice - 0.07, 4)

pathlib.Path("metrics").mkdir(exist_ok=True)
with open("metrics/metrics.json", "w") as out:
    json.dump({"Dice": dice, "IoU": iou}, out, sort_keys=True)

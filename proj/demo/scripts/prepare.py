#!/usr/bin/env python3
"""Split the preprocessed volumes into training and validation sets."""
import os
import pathlib

import yaml

params = yaml.safe_load(open("params.yaml"))
split = float(params["prepare"]["split"])

files = sorted(pathlib.Path("data/preprocessed").glob("*.nii"))
n_train = max(1, int(len(files) * split))

pathlib.Path("data/prepared").mkdir(parents=True, exist_ok=True)
with open(".counters", "a") as counters:
    counters.write(os.environ.get("AIMP_STAGE", "?") + "\n")

train = "".join(f.read_text() for f in files[:n_train])
val = "".join(f.read_text() for f in files[n_train:]) or "EMPTY\n"
pathlib.Path("data/prepared/train.txt").write_text(train)
pathlib.Path("data/prepared/val.txt").write_text(val)

#!/usr/bin/env python3
"""Resample and crop every volume according to image_size and maskcrop."""
import os
import pathlib

import yaml

params = yaml.safe_load(open("params.yaml"))
image_size = int(params["image_size"])
maskcrop = bool(params["maskcrop"])

pathlib.Path("data/preprocessed").mkdir(parents=True, exist_ok=True)
with open(".counters", "a") as counters:
    counters.write(os.environ.get("AIMP_STAGE", "?") + "\n")

for src in sorted(pathlib.Path("data/nifti").glob("*.nii")):
    header = f"SIZE={image_size} CROP={str(maskcrop).lower()}\n"
    out = pathlib.Path("data/preprocessed") / src.name
    out.write_text(header + src.read_text())

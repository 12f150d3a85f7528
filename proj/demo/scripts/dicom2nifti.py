#!/usr/bin/env python3
"""Convert the raw DICOM-style inputs into NIfTI-style text volumes."""
import os
import pathlib

pathlib.Path("data/nifti").mkdir(parents=True, exist_ok=True)
with open(".counters", "a") as counters:
    counters.write(os.environ.get("AIMP_STAGE", "?") + "\n")

for src in sorted(pathlib.Path("data/raw").glob("*.dcm")):
    out = pathlib.Path("data/nifti") / (src.stem + ".nii")
    out.write_text("NIFTI-1\n" + src.read_text())

"""The two canned image pipelines and the Fourier demo.

Each run writes its intermediate stages into an output directory (16-bit
PNG for images, CSV for vectors and surfaces) and returns a
``PipelineReport`` with the stage paths, per-stage wall times, and the
final scalar results.
"""

from __future__ import annotations

import csv
import os
import time
from pathlib import Path

import numpy as np

from . import codec, core, filters, morph, seg, spectral
from .dist import edt
from .images import BinaryImage, IndexedImage, RealImage
from .report import PipelineReport

# Fixed 10-entry label palette: distinct hues, deterministic across runs.
LABEL_PALETTE = np.array(
    [
        (0.12, 0.47, 0.71),
        (1.00, 0.50, 0.05),
        (0.17, 0.63, 0.17),
        (0.84, 0.15, 0.16),
        (0.58, 0.40, 0.74),
        (0.55, 0.34, 0.29),
        (0.89, 0.47, 0.76),
        (0.50, 0.50, 0.50),
        (0.74, 0.74, 0.13),
        (0.09, 0.75, 0.81),
    ],
    dtype=np.float64,
)


class _StageWriter:
    def __init__(self, outdir: str | os.PathLike, report: PipelineReport):
        self.outdir = Path(outdir)
        self.outdir.mkdir(parents=True, exist_ok=True)
        self.report = report
        self._t0 = time.perf_counter()

    def _record(self, name: str, path: Path) -> None:
        now = time.perf_counter()
        self.report.add_stage(name, str(path), (now - self._t0) * 1000.0)
        self._t0 = now

    def real(self, name: str, img: RealImage) -> Path:
        path = self.outdir / f"{name}.png"
        codec.write_image(core.gray16_from_real(img), path, "png")
        self._record(name, path)
        return path

    def binary(self, name: str, mask: BinaryImage) -> Path:
        return self.real(name, core.real_from_binary(mask))

    def indexed(self, name: str, img: IndexedImage) -> Path:
        path = self.outdir / f"{name}.png"
        codec.write_image(img, path, "png")
        self._record(name, path)
        return path

    def csv_rows(self, name: str, header: list[str], rows) -> Path:
        path = self.outdir / f"{name}.csv"
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(header)
            writer.writerows(rows)
        self._record(name, path)
        return path


def pipeline_ocr(input_path: str | os.PathLike, outdir: str | os.PathLike,
                 sigma: float = 2.0, bin_t: float = 0.8,
                 skel_t: float = 0.5) -> PipelineReport:
    """Glyph cleanup chain: blur, binarize, skeletonize, prune.

    The binary stage has the glyph at 0 (dark ink), so it is complemented
    before skeletonization. Two pruned skeletons are written: a fine one
    at threshold 0.1 that still shows spurs, and the final one at
    ``skel_t``.
    """
    report = PipelineReport()
    stages = _StageWriter(outdir, report)

    a = codec.read_gray(input_path)
    b = filters.gaussian_blur(a, sigma)
    stages.real("blur", b)
    c = core.threshold(b, bin_t)
    stages.binary("binary", c)
    glyph = c.complement()
    field = morph.skeleton(glyph)
    stages.real("skeleton_field", field)
    fine = core.threshold(field, 0.1)
    stages.binary("skeleton_fine", fine)
    final = core.threshold(field, skel_t)
    stages.binary("skeleton", final)

    report.results["skeleton_fine_pixels"] = int(fine.samples.sum())
    report.results["skeleton_pixels"] = int(final.samples.sum())
    report.results["components"] = seg.count_components(final.samples.astype(bool))
    report.results["holes"] = seg.count_holes(final.samples.astype(bool))
    return report


def render_labels(labels: np.ndarray) -> IndexedImage:
    """Color a label image with the fixed palette (wrapping past 10)."""
    index = (labels - 1) % len(LABEL_PALETTE) + 1
    return IndexedImage(index.astype(np.int32), LABEL_PALETTE)


def pipeline_cells(input_path: str | os.PathLike, outdir: str | os.PathLike,
                   bin_t: float = 0.9, median_r: int = 2) -> PipelineReport:
    """Separate and count overlapping round objects.

    Chain: binarize and complement (objects were dark), exact distance
    transform, sqrt and rescale to [0, 1], complement so object centers
    become minima, median-filter away spurious minima, zero the
    background, watershed, count regions minus the background basin.
    """
    report = PipelineReport()
    stages = _StageWriter(outdir, report)

    a = codec.read_gray(input_path)
    b = core.threshold(a, bin_t).complement()
    stages.binary("binary", b)
    d = edt(b)
    shaped = core.normalize(RealImage(np.sqrt(d.values)))
    stages.real("edt", shaped)
    stages.csv_rows(
        "edt_surface",
        ["row", "col", "value"],
        (
            (y, x, repr(float(shaped.samples[y, x])))
            for y in range(shaped.height)
            for x in range(shaped.width)
        ),
    )
    relief = core.mask_multiply(
        filters.median_filter(core.invert(shaped), median_r), b
    )
    stages.real("relief", relief)
    w = seg.watershed(relief)
    stages.indexed("labels", render_labels(w.labels))

    report.results["regions"] = w.max_label
    report.results["count"] = seg.count_objects(w)
    return report


def demo_fft(outdir: str | os.PathLike) -> PipelineReport:
    """Three-cosine signal, its shifted spectrum, and the roundtrip.

    The 32-sample signal is cos(a/10) + cos(a/2) + cos(a/6) for a = 1..32.
    Values are written with repr precision, so parsing the CSV recovers
    them bit-exactly.
    """
    report = PipelineReport()
    stages = _StageWriter(outdir, report)

    a = np.arange(1, 33, dtype=np.float64)
    c1 = np.cos(a / 10.0)
    c2 = np.cos(a / 2.0)
    c3 = np.cos(a / 6.0)
    c = c1 + c2 + c3
    hc = spectral.fft(c, -1)
    shifted = spectral.fftshift(hc)
    fc = spectral.fft(hc, 1)

    rows = [
        (
            i + 1,
            repr(c1[i]), repr(c2[i]), repr(c3[i]), repr(c[i]),
            repr(shifted[i].real), repr(shifted[i].imag),
            repr(fc[i].real), repr(fc[i].imag),
        )
        for i in range(len(a))
    ]
    stages.csv_rows(
        "fft_demo",
        ["index", "c1", "c2", "c3", "c",
         "spectrum_real", "spectrum_imag",
         "roundtrip_real", "roundtrip_imag"],
        rows,
    )
    err = float(np.abs(fc - c).max())
    report.results["signal_length"] = len(c)
    report.results["max_roundtrip_error"] = repr(err)
    return report

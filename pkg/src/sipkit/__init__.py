"""sipkit: a self-contained image-processing library and pipeline CLI.

Codecs (PNG/PNM), elementwise operations, spatial filters, geometric
transforms, exact Euclidean distance transforms, disc morphology,
multiscale skeletons, watershed segmentation, and a small FFT.
"""

from .codec import DecodedImage, read_gray, read_image, write_image
from .core import (
    equalize,
    gray16_from_real,
    invert,
    mask_multiply,
    normalize,
    real_from_binary,
    real_from_gray16,
    scale8to16,
    threshold,
    to_gray,
)
from .dist import edt, edt_limited, edt_squared
from .errors import (
    CodecError,
    CorruptFileError,
    DomainError,
    SipkitError,
    UnsupportedFormatError,
)
from .filters import GaussianKernel, gaussian_blur, median_filter, sobel_edges
from .geom import AffineMap, affine_warp, rotate, zoom
from .images import (
    BinaryImage,
    DistanceImage,
    Gray16Image,
    IndexedImage,
    LabelImage,
    RealImage,
    SkeletonField,
    TruecolorImage,
)
from .morph import dilate_disc, erode_disc, skeleton
from .pipelines import demo_fft, pipeline_cells, pipeline_ocr
from .report import PipelineReport
from .seg import count_objects, regional_minima, watershed
from .spectral import fft, fftshift

__version__ = "0.1.0"

__all__ = [
    "AffineMap",
    "BinaryImage",
    "CodecError",
    "CorruptFileError",
    "DecodedImage",
    "DistanceImage",
    "DomainError",
    "GaussianKernel",
    "Gray16Image",
    "IndexedImage",
    "LabelImage",
    "PipelineReport",
    "RealImage",
    "SipkitError",
    "SkeletonField",
    "TruecolorImage",
    "UnsupportedFormatError",
    "affine_warp",
    "count_objects",
    "demo_fft",
    "dilate_disc",
    "edt",
    "edt_limited",
    "edt_squared",
    "equalize",
    "erode_disc",
    "fft",
    "fftshift",
    "gaussian_blur",
    "gray16_from_real",
    "invert",
    "mask_multiply",
    "median_filter",
    "normalize",
    "pipeline_cells",
    "pipeline_ocr",
    "read_gray",
    "read_image",
    "real_from_binary",
    "real_from_gray16",
    "regional_minima",
    "rotate",
    "scale8to16",
    "skeleton",
    "sobel_edges",
    "threshold",
    "to_gray",
    "watershed",
    "write_image",
    "zoom",
]

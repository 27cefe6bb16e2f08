"""Quaternion tensor completion toolkit.

Quaternion scalars/arrays with Cayley-Dickson views, QSVD and proximal
operators, tensor-train decomposition and ranks, unitary multi-mode
transforms, ket augmentation for images and videos, an ADMM completion
solver, and image inpainting plumbing (PNG I/O, masks, PSNR/SSIM).
"""

from .core import (QArray, Quaternion, cd_join, cd_split, fro_norm, hermitian,
                   l1_norm, matmul, modulus)
from .image import ColorImage, center_crop, largest_power_side, load_image, save_image
from .linalg import (QSVDResult, ShrinkParams, complex_adjoint, qrank, qsvd,
                     qwnn_shrink, shrink_q, singular_values)
from .masks import MaskSpec, make_mask
from .metrics import psnr, ssim
from .qka import QkaPlan, qka_forward, qka_inverse, qka_video_forward, qka_video_inverse
from .qten import load_qten, save_qten
from .sample import sample_image
from .solver import ObservationSet, SolverConfig, SolverState, complete
from .tensor_train import (QTTCores, canonical_fold, canonical_unfold, fold_mode,
                           n_mode_product, qtt_rank, tt_reconstruct, tt_svd,
                           unfold_mode)
from .transforms import (DEFAULT_MU, TransformSpec, apply_transform,
                         inverse_transform, lift_classical, make_transform)

__version__ = "0.1.0"

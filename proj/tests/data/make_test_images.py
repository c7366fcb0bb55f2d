"""Regenerates the public test images in this directory.

ct_small_128.pgm      pydicom test file CT_small.dcm (128x128 CT slice),
                      linearly rescaled from its min..max to 0..255
ct_small_128_16.pgm   the same slice, raw stored values as 16-bit samples
shepp_logan_128.pgm   scikit-image Shepp-Logan phantom, resized 400 -> 128
"""
import os

import numpy as np
import pydicom
import pydicom.data
import skimage.data
import skimage.transform

HERE = os.path.dirname(os.path.abspath(__file__))


def write_pgm(path, img, maxval):
    img = np.asarray(img)
    h, w = img.shape
    with open(path, "wb") as f:
        f.write(b"P5\n%d %d\n%d\n" % (w, h, maxval))
        f.write(img.astype(">u2" if maxval > 255 else "u1").tobytes())


def main():
    ct_path = os.path.join(os.path.dirname(pydicom.data.__file__), "test_files", "CT_small.dcm")
    ct = pydicom.dcmread(ct_path).pixel_array.astype(np.int64)
    lo, hi = ct.min(), ct.max()
    write_pgm(os.path.join(HERE, "ct_small_128.pgm"),
              np.rint((ct - lo) * 255.0 / (hi - lo)), 255)
    write_pgm(os.path.join(HERE, "ct_small_128_16.pgm"), np.clip(ct, 0, 65535), 65535)

    phantom = skimage.transform.resize(skimage.data.shepp_logan_phantom(), (128, 128),
                                       anti_aliasing=True)
    write_pgm(os.path.join(HERE, "shepp_logan_128.pgm"), np.rint(phantom * 255), 255)


if __name__ == "__main__":
    main()

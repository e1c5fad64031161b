# Copyright (c) 2026 strokemark developers
# MIT License

"""
Input/output utilities
----------------------
* read_png / write_png:
  Read an 8-bit image (RGB reduced by luminance) / write an 8-bit
  grayscale PNG.

* write_json / read_json:
  Write/read the JSON reports, manifests and indexes.

* dataframe_to_csv:
  Save the given Pandas DataFrame into a CSV text file.
"""

import os
import json
import logging
from datetime import datetime

import numpy as np
import pandas as pd
from PIL import Image, UnidentifiedImageError

from ..errors import ImageIOError


logger = logging.getLogger(__name__)


def _create_dir(filepath):
    """
    Check the existence of the target directory, and create it if necessary.

    NOTE
    ----
    If the given ``filepath`` is simply the filename without any directory
    path, then just returns.
    """
    dirname = os.path.dirname(filepath)
    if dirname and not os.path.exists(dirname):
        os.makedirs(dirname)
        logger.info("Created output directory: {0}".format(dirname))


def _check_existence(filepath, clobber=False, remove=False):
    """
    Check the existence of the target file.

    * raise ``OSError`` : file exists and clobber is False;
    * no action : files does not exists or clobber is True;
    * remove the file : files exists and clobber is True and remove is True
    """
    if os.path.exists(filepath):
        if clobber:
            if remove:
                logger.warning("Removed existing file: {0}".format(filepath))
                os.remove(filepath)
            else:
                logger.warning("Existing file will be overwritten.")
        else:
            raise OSError("Output file exists: {0}".format(filepath))


def read_png(infile):
    """
    Read an image file as a 2D ``uint8`` array.

    Color images are reduced to gray by the ITU-R BT.601 luminance
    (Pillow's ``"L"`` mode conversion).

    Raises
    ------
    ImageIOError :
        The file is missing or cannot be decoded.
    """
    try:
        with Image.open(infile) as img:
            img.load()
            if img.mode in ("RGBA", "LA", "P"):
                img = img.convert("RGBA")
                background = Image.new("RGBA", img.size, (255, 255, 255, 255))
                img = Image.alpha_composite(background, img)
            data = np.array(img.convert("L"), dtype=np.uint8)
    except FileNotFoundError:
        raise ImageIOError(infile, "file not found")
    except (UnidentifiedImageError, OSError, ValueError) as e:
        raise ImageIOError(infile, "cannot decode image: %s" % e)
    logger.debug("Read image %s: %dx%d" % (infile, data.shape[1],
                                          data.shape[0]))
    return data


def write_png(outfile, image, clobber=True):
    """
    Write the image as an 8-bit PNG file: grayscale for a 2D array, RGB
    for an array of shape ``(H, W, 3)``.

    Raises
    ------
    ImageIOError :
        The file cannot be written.
    """
    image = np.asarray(image)
    if not (image.ndim == 2 or (image.ndim == 3 and image.shape[2] == 3)):
        raise ImageIOError(outfile, "not a gray or RGB image")
    try:
        _create_dir(outfile)
        _check_existence(outfile, clobber=clobber)
        data = np.clip(image, 0, 255).astype(np.uint8)
        Image.fromarray(data).save(outfile, format="PNG")
    except OSError as e:
        raise ImageIOError(outfile, str(e))
    logger.debug("Wrote image: %s" % outfile)


def write_json(outfile, data, clobber=True):
    """
    Dump the data (nested dict/list of plain types) as a JSON file.
    NumPy scalars and arrays are converted to their Python equivalents.
    """
    def _default(obj):
        if isinstance(obj, np.integer):
            return int(obj)
        if isinstance(obj, np.floating):
            return float(obj)
        if isinstance(obj, np.ndarray):
            return obj.tolist()
        raise TypeError("not JSON serializable: %r" % (obj,))

    _create_dir(outfile)
    _check_existence(outfile, clobber=clobber)
    with open(outfile, "w") as fp:
        json.dump(data, fp, indent=2, default=_default)
        fp.write("\n")
    logger.info("Wrote JSON file: {0}".format(outfile))


def read_json(infile):
    with open(infile) as fp:
        return json.load(fp)


def dataframe_to_csv(df, outfile, comment=None, clobber=False):
    """
    Save the given Pandas DataFrame into a CSV text file with comments
    prepended at the file head.

    Parameters
    ----------
    df : `~pandas.DataFrame`
        The DataFrame to be saved to the CSV text file.
    outfile : str
        The path to the output CSV file.
    comment : list[str], optional
        A list of comments to be prepended to the output CSV file header.
        The prefix ``#`` is not required and will be automatically added.
    clobber : bool, optional
        Whether overwrite the existing output file?
    """
    if not isinstance(df, pd.DataFrame):
        raise TypeError("Not a Pandas DataFrame!")

    _create_dir(outfile)
    _check_existence(outfile, clobber=clobber, remove=True)

    if comment is None:
        comment = [
            "by %s" % __name__,
            "at %sZ" % datetime.utcnow().isoformat(),
        ]

    with open(outfile, "w") as fh:
        fh.write("".join(["# "+line.strip()+"\n" for line in comment]))
        df.to_csv(fh, header=True, index=False)
    logger.info("Wrote DataFrame to CSV file: {0}".format(outfile))


def csv_to_dataframe(infile):
    """
    Read the CSV file written by ``dataframe_to_csv()``.

    Returns
    -------
    df : `~pandas.DataFrame`
    comment : list[str]
        The header comment lines, with the ``#`` prefix striped.
    """
    comments = []
    with open(infile) as fh:
        for line in fh:
            line = line.strip()
            if line == "":
                continue
            elif line[0] == "#":
                comments.append(line.lstrip("# "))
            else:
                break

    df = pd.read_csv(infile, comment="#")
    return (df, comments)

import pathlib
import sys

src = pathlib.Path(__file__).parent / "src"
if str(src) not in sys.path:
    sys.path.insert(0, str(src))

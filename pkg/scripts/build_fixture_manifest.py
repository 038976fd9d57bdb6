"""
Regenerate the sha256 manifest of the shipped fixtures
"""

import argparse
import sys
from pathlib import Path

# Add project root to Python path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))


def main():
    from backend.services.file_handler import FIXTURE_FILES, MANIFEST_FILE
    from backend.utils.helpers import calculate_file_hash
    from config.settings import settings

    parser = argparse.ArgumentParser(description="Write the fixture checksum manifest")
    parser.add_argument("--fixtures", type=Path, default=settings.FIXTURES_DIR)
    args = parser.parse_args()

    lines = []
    for name in FIXTURE_FILES:
        path = args.fixtures / name
        if not path.is_file():
            print(f"Missing fixture: {path}", file=sys.stderr)
            return 4
        lines.append(f"{calculate_file_hash(str(path))}  {name}")
    (args.fixtures / MANIFEST_FILE).write_text("\n".join(lines) + "\n")
    print(f"Wrote {len(lines)} checksums to {args.fixtures / MANIFEST_FILE}")
    return 0


if __name__ == "__main__":
    sys.exit(main())

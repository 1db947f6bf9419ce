"""Generate placeholder picture/audio assets for every reference-deck card.

Pictures are simple SVG tiles (big word on a white card, category-colored
border) and audio cues are short sine beeps whose pitch is derived from the
card id, so each card sounds distinct. Real artwork and recorded speech can
drop in later under the same file names.

Run from the repository root:

    python3 scripts/make_placeholder_assets.py
"""

import json
import math
import struct
import wave
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
DECK = ROOT / "src" / "pecs" / "data" / "reference_deck.json"
ASSETS = ROOT / "src" / "pecs" / "data" / "assets"

CATEGORY_COLORS = {
    "Core": "#546e7a",
    "Animals": "#8d6e63",
    "Food": "#ef6c00",
    "Colours": "#7b1fa2",
    "Shapes": "#1976d2",
    "Fruits": "#c62828",
    "Emotions": "#f9a825",
    "Motions": "#2e7d32",
    "Vegetables": "#558b2f",
}

SAMPLE_RATE = 22050
BEEP_SECONDS = 0.35


def write_svg(path: Path, word: str, color: str) -> None:
    size = 43 if len(word) <= 6 else 30
    svg = (
        '<svg xmlns="http://www.w3.org/2000/svg" width="240" height="240" '
        'viewBox="0 0 240 240">\n'
        '  <rect x="6" y="6" width="228" height="228" rx="24" fill="#ffffff" '
        f'stroke="{color}" stroke-width="10"/>\n'
        f'  <circle cx="120" cy="88" r="44" fill="{color}" opacity="0.25"/>\n'
        f'  <text x="120" y="178" text-anchor="middle" font-family="sans-serif" '
        f'font-size="{size}" font-weight="bold" fill="#111111">{word}</text>\n'
        "</svg>\n"
    )
    path.write_text(svg, encoding="utf-8")


def write_beep(path: Path, card_id: str) -> None:
    # Map the id onto a pentatonic-ish range so neighboring cards differ clearly.
    pitch = 320 + (sum(card_id.encode()) * 7) % 420
    n = int(SAMPLE_RATE * BEEP_SECONDS)
    frames = bytearray()
    for i in range(n):
        t = i / SAMPLE_RATE
        envelope = min(1.0, i / 400, (n - i) / 2000)
        value = int(20000 * envelope * math.sin(2 * math.pi * pitch * t))
        frames += struct.pack("<h", value)
    with wave.open(str(path), "wb") as wav:
        wav.setnchannels(1)
        wav.setsampwidth(2)
        wav.setframerate(SAMPLE_RATE)
        wav.writeframes(bytes(frames))


def main() -> None:
    deck = json.loads(DECK.read_text(encoding="utf-8"))
    pictures = ASSETS / "pictures"
    audio = ASSETS / "audio"
    pictures.mkdir(parents=True, exist_ok=True)
    audio.mkdir(parents=True, exist_ok=True)
    for card in deck["cards"]:
        color = CATEGORY_COLORS.get(card["category"], "#444444")
        write_svg(pictures / f"{card['id']}.svg", card["word"], color)
        write_beep(audio / f"{card['id']}.wav", card["id"])
    print(f"wrote {len(deck['cards'])} pictures and cues under {ASSETS}")


if __name__ == "__main__":
    main()

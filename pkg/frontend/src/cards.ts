/** Attribute-card rendering: the gallery is featural, so an "image" is drawn
 * as a card of its attributes — subject glyph, color swatch, count badge,
 * and the remaining attributes as labels. */

import { ImageInfo } from "./api.js";

const SUBJECT_GLYPHS: Record<string, string> = {
  cat: "\u{1F431}",
  dog: "\u{1F436}",
  bird: "\u{1F426}",
  fish: "\u{1F41F}",
  horse: "\u{1F434}",
  rabbit: "\u{1F430}",
  fox: "\u{1F98A}",
  owl: "\u{1F989}",
};

const COLOR_SWATCHES: Record<string, string> = {
  red: "#d7263d",
  blue: "#2c6fbb",
  green: "#2e933c",
  yellow: "#e0b410",
  white: "#f4f4f0",
  black: "#1f1f1f",
  purple: "#7b4bb7",
};

const COUNT_VALUES: Record<string, number> = {
  one: 1,
  two: 2,
  three: 3,
  four: 4,
  five: 5,
};

const SIZE_SCALE: Record<string, string> = {
  tiny: "1.2rem",
  small: "1.6rem",
  large: "2.2rem",
  huge: "2.8rem",
};

const ORIENTATION_ARROWS: Record<string, string> = {
  left: "←",
  right: "→",
  front: "↓",
  back: "↑",
};

export function subjectGlyph(subject: string): string {
  return SUBJECT_GLYPHS[subject] ?? "?";
}

export function colorSwatch(color: string): string {
  return COLOR_SWATCHES[color] ?? "#999999";
}

export function countBadge(count: string): string {
  const n = COUNT_VALUES[count];
  return n === undefined ? count : `×${n}`;
}

export function orientationArrow(orientation: string): string {
  return ORIENTATION_ARROWS[orientation] ?? orientation;
}

/** Build the DOM card for one gallery image. */
export function renderCard(info: ImageInfo, score?: number): HTMLElement {
  const attrs = info.attributes;
  const card = document.createElement("div");
  card.className = "image-card";
  card.dataset.imageId = String(info.image_id);
  card.title = info.caption.join(" ");

  const face = document.createElement("div");
  face.className = "card-face";
  face.style.backgroundColor = colorSwatch(attrs.color ?? "");
  if (attrs.color === "black") {
    face.style.color = "#f4f4f0";
  }

  const glyph = document.createElement("span");
  glyph.className = "card-glyph";
  glyph.textContent = subjectGlyph(attrs.subject ?? "");
  glyph.style.fontSize = SIZE_SCALE[attrs.size ?? ""] ?? "1.8rem";
  face.appendChild(glyph);

  const count = document.createElement("span");
  count.className = "card-count";
  count.textContent = countBadge(attrs.count ?? "");
  face.appendChild(count);

  const arrow = document.createElement("span");
  arrow.className = "card-arrow";
  arrow.textContent = orientationArrow(attrs.orientation ?? "");
  face.appendChild(arrow);

  card.appendChild(face);

  const meta = document.createElement("div");
  meta.className = "card-meta";
  const label = document.createElement("span");
  label.className = "card-label";
  label.textContent = `${attrs.size ?? ""} ${attrs.color ?? ""} ${attrs.subject ?? ""} on ${attrs.background ?? ""}`;
  meta.appendChild(label);
  const idTag = document.createElement("span");
  idTag.className = "card-id";
  idTag.textContent =
    score === undefined
      ? `#${info.image_id}`
      : `#${info.image_id} · ${score.toFixed(3)}`;
  meta.appendChild(idTag);
  card.appendChild(meta);

  return card;
}

/** Small inline chip for an image already in the transcript. */
export function renderChip(info: ImageInfo | null, imageId: number): HTMLElement {
  const chip = document.createElement("span");
  chip.className = "image-chip";
  chip.dataset.imageId = String(imageId);
  if (imageId < 0) {
    chip.textContent = `upload ${imageId}`;
    chip.classList.add("upload-chip");
  } else if (info) {
    chip.style.backgroundColor = colorSwatch(info.attributes.color ?? "");
    chip.textContent = `${subjectGlyph(info.attributes.subject ?? "")} #${imageId}`;
    chip.title = info.caption.join(" ");
  } else {
    chip.textContent = `#${imageId}`;
  }
  return chip;
}

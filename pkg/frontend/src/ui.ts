/** DOM view: renders the store state and forwards user intents. */

import { Api, ImageInfo } from "./api.js";
import { renderCard, renderChip } from "./cards.js";
import { SessionStore, StoreState, TranscriptEntry } from "./store.js";

/** Gallery metadata cache: attribute cards never change for a given id. */
export class GalleryCache {
  private cache = new Map<number, ImageInfo>();

  constructor(private readonly api: Api) {}

  async get(imageId: number): Promise<ImageInfo | null> {
    if (imageId < 0) {
      return null; // user upload: no gallery metadata
    }
    const hit = this.cache.get(imageId);
    if (hit) {
      return hit;
    }
    const info = await this.api.imageInfo(imageId);
    this.cache.set(imageId, info);
    return info;
  }
}

export interface UiElements {
  transcript: HTMLElement;
  grid: HTMLElement;
  gridPanel: HTMLElement;
  notice: HTMLElement;
  sessionLabel: HTMLElement;
  textInput: HTMLInputElement;
  imageRefs: HTMLInputElement;
  forceToggle: HTMLInputElement;
  sendButton: HTMLButtonElement;
  dismissButton: HTMLButtonElement;
  newSessionButton: HTMLButtonElement;
  attachInput: HTMLInputElement;
  attachButton: HTMLButtonElement;
  exportButton: HTMLButtonElement;
}

export function findElements(root: Document): UiElements {
  const byId = <T extends HTMLElement>(id: string): T => {
    const el = root.getElementById(id);
    if (!el) {
      throw new Error(`missing element #${id}`);
    }
    return el as T;
  };
  return {
    transcript: byId("transcript"),
    grid: byId("candidate-grid"),
    gridPanel: byId("grid-panel"),
    notice: byId("notice"),
    sessionLabel: byId("session-label"),
    textInput: byId<HTMLInputElement>("text-input"),
    imageRefs: byId<HTMLInputElement>("image-refs"),
    forceToggle: byId<HTMLInputElement>("force-toggle"),
    sendButton: byId<HTMLButtonElement>("send-button"),
    dismissButton: byId<HTMLButtonElement>("dismiss-button"),
    newSessionButton: byId<HTMLButtonElement>("new-session"),
    attachInput: byId<HTMLInputElement>("attach-input"),
    attachButton: byId<HTMLButtonElement>("attach-button"),
    exportButton: byId<HTMLButtonElement>("export-button"),
  };
}

export function parseImageRefs(raw: string): number[] {
  return raw
    .split(/[\s,]+/)
    .filter((part) => part.length > 0)
    .map((part) => {
      const n = Number(part);
      if (!Number.isInteger(n)) {
        throw new Error(`image ref "${part}" is not an integer id`);
      }
      return n;
    });
}

async function renderEntry(
  entry: TranscriptEntry,
  gallery: GalleryCache,
): Promise<HTMLElement> {
  const row = document.createElement("div");
  if (entry.kind === "user") {
    row.className = "bubble user";
    const text = document.createElement("span");
    text.textContent = entry.text;
    row.appendChild(text);
    for (const id of entry.imageIds) {
      row.appendChild(renderChip(await gallery.get(id), id));
    }
  } else if (entry.kind === "assistant_text") {
    row.className = "bubble assistant";
    row.textContent = entry.words.join(" ");
  } else {
    row.className = "bubble assistant image-answer";
    const info = await gallery.get(entry.imageId);
    if (info) {
      row.appendChild(renderCard(info));
    } else {
      row.appendChild(renderChip(null, entry.imageId));
    }
  }
  return row;
}

export class View {
  private renderSeq = 0;

  constructor(
    private readonly els: UiElements,
    private readonly store: SessionStore,
    private readonly gallery: GalleryCache,
  ) {}

  bind(): void {
    const els = this.els;
    els.sendButton.addEventListener("click", () => void this.send());
    els.textInput.addEventListener("keydown", (event) => {
      if ((event as KeyboardEvent).key === "Enter") {
        void this.send();
      }
    });
    els.dismissButton.addEventListener("click", () => void this.store.dismiss());
    els.newSessionButton.addEventListener("click", () => void this.store.start());
    els.attachButton.addEventListener("click", () => {
      const id = els.attachInput.value.trim();
      if (id) {
        void this.store.attach(id);
      }
    });
    els.exportButton.addEventListener("click", () => void this.exportTranscript());
    this.store.subscribe((state) => void this.render(state));
  }

  private async send(): Promise<void> {
    const els = this.els;
    let imageIds: number[];
    try {
      imageIds = parseImageRefs(els.imageRefs.value);
    } catch (err) {
      els.notice.textContent = (err as Error).message;
      return;
    }
    const text = els.textInput.value.trim();
    if (!text && imageIds.length === 0) {
      return;
    }
    await this.store.sendTurn({
      text,
      image_ids: imageIds,
      force_retrieval: els.forceToggle.checked,
    });
    els.textInput.value = "";
    els.imageRefs.value = "";
  }

  private async exportTranscript(): Promise<void> {
    try {
      const json = await this.store.exportTranscript();
      const blob = new Blob([json], { type: "application/json" });
      const link = document.createElement("a");
      link.href = URL.createObjectURL(blob);
      link.download = "session-transcript.json";
      link.click();
      URL.revokeObjectURL(link.href);
    } catch (err) {
      this.els.notice.textContent = (err as Error).message;
    }
  }

  async render(state: StoreState): Promise<void> {
    // Build detached, commit synchronously: renders overlap (metadata fetches
    // yield), so only the most recent one may touch the DOM.
    const seq = ++this.renderSeq;

    const transcriptNodes: HTMLElement[] = [];
    for (const entry of state.entries) {
      transcriptNodes.push(await renderEntry(entry, this.gallery));
    }

    // at most one candidate grid, in exactly the server's score order
    const gridNodes: HTMLElement[] = [];
    if (state.grid) {
      if (state.pendingWords.length > 0) {
        const lead = document.createElement("div");
        lead.className = "grid-lead";
        lead.textContent = state.pendingWords.join(" ");
        gridNodes.push(lead);
      }
      for (const candidate of state.grid) {
        const info = await this.gallery.get(candidate.image_id);
        if (!info) {
          continue;
        }
        const card = renderCard(info, candidate.score);
        card.classList.add("selectable");
        card.addEventListener("click", () =>
          void this.store.select(candidate.image_id),
        );
        gridNodes.push(card);
      }
    }

    if (seq !== this.renderSeq) {
      return; // a newer state arrived while we were fetching metadata
    }

    const els = this.els;
    els.sessionLabel.textContent = state.sessionId ?? "no session";
    els.notice.textContent = state.notice ?? "";
    els.transcript.replaceChildren(...transcriptNodes);
    els.transcript.scrollTop = els.transcript.scrollHeight;
    els.grid.replaceChildren(...gridNodes);
    els.gridPanel.hidden = !state.grid;

    const busy = state.phase === "busy";
    const awaiting = state.phase === "awaiting";
    els.sendButton.disabled = busy || awaiting || !state.sessionId;
    els.textInput.disabled = busy || awaiting || !state.sessionId;
    els.imageRefs.disabled = busy || awaiting || !state.sessionId;
    els.dismissButton.disabled = !awaiting;
    els.exportButton.disabled = !state.sessionId;
  }
}

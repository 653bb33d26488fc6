import { beforeEach, describe, expect, it } from "vitest";

import { SessionStore } from "../src/store.js";
import { findElements, GalleryCache, parseImageRefs, View } from "../src/ui.js";
import { FakeServer } from "./fake-server.js";

const PAGE = `
  <span id="session-label"></span>
  <button id="new-session"></button>
  <input id="attach-input" />
  <button id="attach-button"></button>
  <button id="export-button"></button>
  <div id="transcript"></div>
  <div id="notice"></div>
  <input id="text-input" />
  <input id="image-refs" />
  <input id="force-toggle" type="checkbox" />
  <button id="send-button"></button>
  <section id="grid-panel" hidden>
    <button id="dismiss-button"></button>
    <div id="candidate-grid"></div>
  </section>
`;

/** Renders run as un-awaited async reactions; drain the task queue. */
async function flush(): Promise<void> {
  for (let i = 0; i < 10; i++) {
    await new Promise((resolve) => setTimeout(resolve, 0));
  }
}

let server: FakeServer;
let store: SessionStore;
let view: View;

beforeEach(async () => {
  document.body.innerHTML = PAGE;
  server = new FakeServer();
  store = new SessionStore(server);
  view = new View(findElements(document), store, new GalleryCache(server));
  view.bind();
  await store.start();
  await flush();
});

function el<T extends HTMLElement>(id: string): T {
  return document.getElementById(id) as T;
}

async function sendText(text: string): Promise<void> {
  el<HTMLInputElement>("text-input").value = text;
  el<HTMLButtonElement>("send-button").click();
  await flush();
}

describe("parseImageRefs", () => {
  it("accepts spaces and commas, rejects non-integers", () => {
    expect(parseImageRefs("")).toEqual([]);
    expect(parseImageRefs("3, 14  -2")).toEqual([3, 14, -2]);
    expect(() => parseImageRefs("3 cats")).toThrow(/not an integer/);
  });
});

describe("View", () => {
  it("shows the session id and an empty transcript after boot", () => {
    expect(el("session-label").textContent).toBe("fake-1");
    expect(el("transcript").children.length).toBe(0);
    expect(el<HTMLButtonElement>("send-button").disabled).toBe(false);
    expect(el<HTMLElement>("grid-panel").hidden).toBe(true);
  });

  it("renders a text exchange as chat bubbles", async () => {
    server.reply({ words: ["it", "is", "red"] });
    await sendText("what color");

    const bubbles = el("transcript").children;
    expect(bubbles.length).toBe(2);
    expect(bubbles[0].className).toContain("user");
    expect(bubbles[0].textContent).toBe("what color");
    expect(bubbles[1].className).toContain("assistant");
    expect(bubbles[1].textContent).toBe("it is red");
    expect(el<HTMLInputElement>("text-input").value).toBe("");
  });

  it("shows candidate cards in the server's order and locks the composer", async () => {
    server.reply({
      words: ["how", "about"],
      candidates: [
        { image_id: 31, score: 0.91 },
        { image_id: 7, score: 0.55 },
        { image_id: 113, score: 0.12 },
      ],
    });
    await sendText("show me a red cat");

    expect(el<HTMLElement>("grid-panel").hidden).toBe(false);
    const grid = el("candidate-grid");
    expect(grid.querySelector(".grid-lead")!.textContent).toBe("how about");
    const ids = [...grid.querySelectorAll<HTMLElement>(".image-card")].map(
      (c) => c.dataset.imageId,
    );
    expect(ids).toEqual(["31", "7", "113"]);
    const scores = [...grid.querySelectorAll(".card-id")].map(
      (c) => c.textContent,
    );
    expect(scores).toEqual(["#31 · 0.910", "#7 · 0.550", "#113 · 0.120"]);

    expect(el<HTMLButtonElement>("send-button").disabled).toBe(true);
    expect(el<HTMLInputElement>("text-input").disabled).toBe(true);
    expect(el<HTMLButtonElement>("dismiss-button").disabled).toBe(false);
  });

  it("clicking a card selects it and collapses the grid into the transcript", async () => {
    server.reply({
      words: ["how", "about"],
      candidates: [
        { image_id: 31, score: 0.91 },
        { image_id: 7, score: 0.55 },
      ],
    });
    await sendText("show me a red cat");

    const grid = el("candidate-grid");
    const second = grid.querySelectorAll<HTMLElement>(".image-card")[1];
    second.click();
    await flush();

    expect(el<HTMLElement>("grid-panel").hidden).toBe(true);
    const bubbles = el("transcript").children;
    expect(bubbles.length).toBe(3);
    expect(bubbles[1].textContent).toBe("how about");
    expect(
      bubbles[2].querySelector<HTMLElement>(".image-card")!.dataset.imageId,
    ).toBe("7");
    expect(el<HTMLButtonElement>("send-button").disabled).toBe(false);
  });

  it("dismiss hides the grid without touching the transcript", async () => {
    server.reply({ candidates: [{ image_id: 5, score: 0.9 }] });
    await sendText("show me");

    el<HTMLButtonElement>("dismiss-button").click();
    await flush();

    expect(el<HTMLElement>("grid-panel").hidden).toBe(true);
    expect(el("transcript").children.length).toBe(1);
    expect(el<HTMLButtonElement>("dismiss-button").disabled).toBe(true);
  });

  it("sends image refs as chips on the user bubble", async () => {
    server.reply({ words: ["similar", "indeed"] });
    el<HTMLInputElement>("text-input").value = "like this one";
    el<HTMLInputElement>("image-refs").value = "12";
    el<HTMLButtonElement>("send-button").click();
    await flush();

    const user = el("transcript").children[0];
    const chip = user.querySelector<HTMLElement>(".image-chip")!;
    expect(chip.dataset.imageId).toBe("12");
    expect(el<HTMLInputElement>("image-refs").value).toBe("");
  });

  it("rejects malformed image refs with a notice and no request", async () => {
    const turnsBefore = server.calls.filter((c) => c === "turn").length;
    el<HTMLInputElement>("text-input").value = "hello";
    el<HTMLInputElement>("image-refs").value = "7 seven";
    el<HTMLButtonElement>("send-button").click();
    await flush();

    expect(server.calls.filter((c) => c === "turn").length).toBe(turnsBefore);
    expect(el("notice").textContent).toMatch(/not an integer/);
  });

  it("shows the failure notice and keeps the transcript intact on errors", async () => {
    server.reply({ words: ["ok"] });
    await sendText("first");
    server.reply({
      fail: Object.assign(new Error("boom"), { name: "Error" }) as never,
    });
    await sendText("second");

    expect(el("transcript").children.length).toBe(2);
    expect(el("notice").textContent).toMatch(/retry/i);
  });

  it("starts a brand-new session from the header button", async () => {
    server.reply({ words: ["hi"] });
    await sendText("hello");

    el<HTMLButtonElement>("new-session").click();
    await flush();

    expect(el("session-label").textContent).toBe("fake-2");
    expect(el("transcript").children.length).toBe(0);
  });

  it("attaches to an existing session by id", async () => {
    server.reply({ words: ["hi", "there"] });
    await sendText("hello");

    el<HTMLButtonElement>("new-session").click();
    await flush();
    el<HTMLInputElement>("attach-input").value = "fake-1";
    el<HTMLButtonElement>("attach-button").click();
    await flush();

    expect(el("session-label").textContent).toBe("fake-1");
    expect(el("transcript").children.length).toBe(2);
    expect(el("transcript").children[1].textContent).toBe("hi there");
  });
});

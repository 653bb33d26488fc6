import { ApiClient } from "./api.js";
import { SessionStore } from "./store.js";
import { findElements, GalleryCache, View } from "./ui.js";

async function boot(): Promise<void> {
  const api = new ApiClient("");
  const store = new SessionStore(api);
  const view = new View(findElements(document), store, new GalleryCache(api));
  view.bind();
  await store.start();
}

window.addEventListener("DOMContentLoaded", () => void boot());

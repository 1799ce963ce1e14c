// Browser bootstrap: create or attach to a session, then delegate clicks
// from the rendered view to the controller and re-render after every
// state change.

import { ApiClient } from "./api.js";
import { SessionController } from "./controller.js";
import { escapeHtml } from "./render.js";

const api = new ApiClient("");

function appRoot(): HTMLElement {
  const root = document.getElementById("app");
  if (!root) {
    throw new Error("missing #app container");
  }
  return root;
}

function renderCreateForm(root: HTMLElement, error?: string): void {
  root.innerHTML = `
    ${error ? `<div class="banner error">${escapeHtml(error)}</div>` : ""}
    <section class="create-form">
      <h2>new review session</h2>
      <label>source CSV<textarea id="source-csv" rows="8" placeholder="header row, then data"></textarea></label>
      <label>destination CSV<textarea id="dest-csv" rows="8" placeholder="header row, then data"></textarea></label>
      <button id="create-session">create session</button>
    </section>`;
  const button = document.getElementById("create-session");
  button?.addEventListener("click", async () => {
    const sourceCsv = (document.getElementById("source-csv") as HTMLTextAreaElement).value;
    const destCsv = (document.getElementById("dest-csv") as HTMLTextAreaElement).value;
    try {
      const info = await api.createSession({
        source_csv: sourceCsv,
        dest_csv: destCsv,
      });
      const url = new URL(window.location.href);
      url.searchParams.set("session", info.session_id);
      window.location.assign(url.toString());
    } catch (e) {
      renderCreateForm(root, e instanceof Error ? e.message : String(e));
    }
  });
}

async function runSession(root: HTMLElement, sessionId: string): Promise<void> {
  const controller = new SessionController(api, sessionId);

  const repaint = () => {
    root.innerHTML =
      `<h1>schema match review <span class="session-id">${escapeHtml(sessionId)}</span></h1>` +
      controller.renderHtml();
  };

  root.addEventListener("click", async (event) => {
    const target = event.target as HTMLElement;
    const action = target.getAttribute("data-action");
    if (!action) {
      return;
    }
    if (action === "confirm" || action === "reject") {
      const source = target.getAttribute("data-source") ?? "";
      const dest = target.getAttribute("data-dest") ?? "";
      if (action === "confirm") {
        await controller.confirmPair(source, dest);
      } else {
        await controller.rejectPair(source, dest);
      }
      repaint();
    } else if (action === "toggle-rejected") {
      controller.toggleRejected();
      repaint();
    }
  });

  root.addEventListener("change", async (event) => {
    const target = event.target as HTMLElement;
    if (target.getAttribute("data-action") === "set-top") {
      const value = Number((target as HTMLSelectElement).value);
      await controller.setTopN(value);
      repaint();
    }
  });

  repaint();
  await controller.load();
  repaint();
}

const params = new URLSearchParams(window.location.search);
const sessionId = params.get("session");
if (sessionId) {
  void runSession(appRoot(), sessionId);
} else {
  renderCreateForm(appRoot());
}

// Posture Studio: create a session, drag the hand target, watch the
// mannequin re-pose with live risk tinting, and read the score panel.
// Every number shown comes from the service.

import "./style.css";
import { ServiceClient } from "./client";
import { DragController } from "./drag";
import { METHOD_FIELDS, METHOD_IDS } from "./descriptors";
import { AssessmentPanel } from "./panel";
import { MannequinView } from "./render";
import type { StateResponse, StepResponse, Vec3 } from "./types";

const app = document.getElementById("app") as HTMLDivElement;
app.innerHTML = `
  <header>
    <strong>openj posture studio</strong>
    <label>service <input id="base-url" value="http://127.0.0.1:8023" size="22"/></label>
    <select id="sex"><option>male</option><option>female</option></select>
    <label>P<input id="percentile" type="number" value="50" min="1" max="99" size="3"/></label>
    <select id="live-method">${METHOD_IDS.map((m) => `<option>${m}</option>`).join("")}</select>
    <button id="connect">create session</button>
    <label><input type="checkbox" id="wireframe"/> wireframe scenes</label>
    <span id="fps"></span>
    <span id="banner" class="banner hidden"></span>
  </header>
  <main>
    <div id="viewport"></div>
    <aside id="panel">
      <h3>assessment</h3>
      <select id="panel-method">${METHOD_IDS.map((m) => `<option>${m}</option>`).join("")}</select>
      <form id="context-form"></form>
      <button id="score">score posture</button>
      <div id="score-view" class="score-view">no score yet</div>
    </aside>
  </main>
`;

const el = <T extends HTMLElement>(id: string) => document.getElementById(id) as T;
const banner = el<HTMLSpanElement>("banner");
const view = new MannequinView(el<HTMLDivElement>("viewport"));
const panel = new AssessmentPanel("rula");

let client: ServiceClient | null = null;
let sessionId: string | null = null;
let drag: DragController | null = null;
let handPoint: Vec3 | null = null;
let redrawStamp = performance.now();
let redrawCount = 0;

function showBanner(text: string): void {
  banner.textContent = text;
  banner.classList.remove("hidden");
}

function applyState(state: StateResponse | StepResponse): void {
  view.updateFrames(state.frames);
  if ("colors" in state) {
    view.updateColors(state.colors);
  }
  const hand = state.frames["hand_r"];
  if (hand) {
    handPoint = "attached_point" in state ? state.attached_point : hand.pos;
    view.showGizmo(handPoint);
  }
}

async function connect(): Promise<void> {
  client = new ServiceClient(el<HTMLInputElement>("base-url").value);
  try {
    const created = await client.createSession({
      sex: el<HTMLSelectElement>("sex").value,
      percentile: Number(el<HTMLInputElement>("percentile").value),
      live_method: el<HTMLSelectElement>("live-method").value,
    });
    sessionId = created.session_id;
    banner.classList.add("hidden");
    view.updateFrames(created.frames);
    const hand = created.frames["hand_r"];
    handPoint = hand ? hand.pos : null;
    view.showGizmo(handPoint);
    drag = new DragController(client, sessionId, {
      onApplied: (resp) => applyState(resp),
      onDisconnected: (reason) => showBanner(`service lost: ${reason}`),
    });
  } catch (err) {
    showBanner(`cannot create session: ${String(err)}`);
  }
}

function renderContextForm(): void {
  const form = el<HTMLFormElement>("context-form");
  const fields = METHOD_FIELDS[panel.method] ?? [];
  form.innerHTML = fields
    .map((f) => {
      if (f.kind === "flag") {
        return `<label>${f.name}<input type="checkbox" data-field="${f.name}"/></label>`;
      }
      if (f.kind === "choice") {
        const opts = (f.choices ?? [])
          .map((c) => `<option>${c}</option>`)
          .join("");
        return `<label>${f.name}<select data-field="${f.name}">${opts}</select></label>`;
      }
      return `<label>${f.name} <small>${f.unit ?? ""}</small>
        <input type="number" step="any" placeholder="${f.initial}" data-field="${f.name}"/></label>`;
    })
    .join("");
  form.querySelectorAll("[data-field]").forEach((node) => {
    node.addEventListener("change", () => {
      const input = node as HTMLInputElement;
      const name = input.dataset["field"] as string;
      if (input.type === "checkbox") {
        panel.setValue(name, input.checked);
      } else if (input.tagName === "SELECT") {
        panel.setValue(name, (node as unknown as HTMLSelectElement).value);
      } else {
        panel.setValue(name, Number(input.value));
      }
    });
  });
}

function renderScore(): void {
  const out = el<HTMLDivElement>("score-view");
  const v = panel.view();
  if (v.status === "scored") {
    const subs = Object.entries(v.subscores ?? {})
      .map(([k, val]) => `<tr><td>${k}</td><td>${String(val)}</td></tr>`)
      .join("");
    out.innerHTML = `<div class="grand">${v.method}: <b>${v.grand}</b></div>
      <div>${v.levelLabel}</div><table>${subs}</table>`;
  } else if (v.status === "missing-context") {
    out.innerHTML = `<div>missing inputs:</div><ul>${v.checklist
      .map((c) => `<li>${c}</li>`)
      .join("")}</ul>`;
  } else if (v.status === "error") {
    out.textContent = `error: ${v.error}`;
  } else {
    out.textContent = "no score yet";
  }
}

el<HTMLButtonElement>("connect").addEventListener("click", () => void connect());
el<HTMLSelectElement>("panel-method").addEventListener("change", (ev) => {
  panel.selectMethod((ev.target as HTMLSelectElement).value);
  renderContextForm();
  renderScore();
  if (client && sessionId) {
    void panel.refresh(client, sessionId).then(renderScore);
  }
});
el<HTMLButtonElement>("score").addEventListener("click", () => {
  if (client && sessionId) {
    void panel.refresh(client, sessionId).then(renderScore);
  }
});
el<HTMLInputElement>("wireframe").addEventListener("change", (ev) => {
  view.setWireframe((ev.target as HTMLInputElement).checked);
});

const canvas = view.renderer.domElement;
canvas.addEventListener("pointerdown", (ev) => {
  if (!drag || !handPoint) return;
  if (view.picks(ev.clientX, ev.clientY, handPoint) && drag.begin("hand_r")) {
    view.setControlsEnabled(false);
    canvas.setPointerCapture(ev.pointerId);
  }
});
canvas.addEventListener("pointermove", (ev) => {
  if (!drag || drag.active === null || !handPoint) return;
  const goal = view.unproject(ev.clientX, ev.clientY, handPoint);
  void drag.pointer(goal);
});
canvas.addEventListener("pointerup", () => {
  drag?.end();
  view.setControlsEnabled(true);
});

renderContextForm();
renderScore();

function loop(): void {
  view.render();
  redrawCount += 1;
  const now = performance.now();
  if (now - redrawStamp > 1000) {
    el<HTMLSpanElement>("fps").textContent =
      `${Math.round((redrawCount * 1000) / (now - redrawStamp))} fps`;
    redrawCount = 0;
    redrawStamp = now;
  }
  requestAnimationFrame(loop);
}
loop();

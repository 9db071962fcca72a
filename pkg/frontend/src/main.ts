import { ApiError, Client } from "./api.js";
import { buildHeatmapModel, canRenderHeatmap, labelColor, tabularModel } from "./heatmap.js";
import { alertRows, errorCard, formatPoint, retractionRows, verdictCard, type Card } from "./panels.js";
import { applyReport, fromTranscript, lastReport, newView, validatePoint, type SessionView } from "./state.js";
import type { CommitmentsPayload, ScenarioMeta } from "./types.js";

const client = new Client("");

const el = {
  scenarioSelect: document.getElementById("scenario-select") as HTMLSelectElement,
  startButton: document.getElementById("start-session") as HTMLButtonElement,
  sessionLabel: document.getElementById("session-label") as HTMLElement,
  queryForm: document.getElementById("query-form") as HTMLFormElement,
  queryInputs: document.getElementById("query-inputs") as HTMLElement,
  queryError: document.getElementById("query-error") as HTMLElement,
  steps: document.getElementById("steps") as HTMLElement,
  alerts: document.getElementById("alerts") as HTMLElement,
  retractions: document.getElementById("retractions") as HTMLElement,
  heatmap: document.getElementById("heatmap") as HTMLElement,
  legend: document.getElementById("legend") as HTMLElement,
  propertySelect: document.getElementById("property-select") as HTMLSelectElement,
  boundInput: document.getElementById("bound-input") as HTMLInputElement,
  runCheck: document.getElementById("run-check") as HTMLButtonElement,
  cards: document.getElementById("cards") as HTMLElement,
};

let view: SessionView | null = null;
let scenarios: ScenarioMeta[] = [];

function text(tag: string, content: string, className?: string): HTMLElement {
  const node = document.createElement(tag);
  node.textContent = content;
  if (className) node.className = className;
  return node;
}

// ---------------------------------------------------------------------------
// rendering

function renderSteps(current: SessionView): void {
  el.steps.replaceChildren();
  for (const report of current.steps) {
    const details = document.createElement("details");
    if (report === lastReport(current)) details.open = true;
    const summary = document.createElement("summary");
    summary.textContent =
      `step ${report.step}: ${formatPoint(report.x)} -> ${report.y}` +
      `  (+${report.delta.added.length} / -${report.delta.retracted.length})`;
    details.appendChild(summary);
    report.explanations.forEach((rules, i) => {
      const block = text("div", "", "explanation");
      block.appendChild(text("div", `explanation ${i}`, "explanation-index"));
      for (const rule of rules) block.appendChild(text("code", rule, "rule"));
      if (!rules.length) block.appendChild(text("code", "(empty decision set)", "rule"));
      details.appendChild(block);
    });
    el.steps.appendChild(details);
  }
}

function renderAlerts(current: SessionView): void {
  el.alerts.replaceChildren();
  const report = lastReport(current);
  if (!report) return;
  const rows = alertRows(report);
  if (!rows.length) {
    el.alerts.appendChild(text("div", "no alerts on the last step", "quiet"));
    return;
  }
  for (const row of rows) el.alerts.appendChild(text("div", row, "alert"));
}

function renderRetractions(current: SessionView): void {
  el.retractions.replaceChildren();
  const report = lastReport(current);
  const rows = report ? retractionRows(report) : [];
  if (!rows.length) {
    el.retractions.appendChild(text("div", "nothing retracted on the last step", "quiet"));
    return;
  }
  for (const row of rows) el.retractions.appendChild(text("div", row.text, "retraction"));
}

function renderLegend(labels: string[]): void {
  el.legend.replaceChildren();
  for (const label of labels) {
    const chip = text("span", label, "chip");
    chip.style.background = labelColor(labels, label);
    el.legend.appendChild(chip);
  }
  const hatched = text("span", "no commitment", "chip hatched");
  el.legend.appendChild(hatched);
}

function renderHeatmap(current: SessionView, commitments: CommitmentsPayload): void {
  el.heatmap.replaceChildren();
  const { features, labels } = current.scenario;
  const report = lastReport(current);
  if (!canRenderHeatmap(features)) {
    // higher-dimensional grids fall back to a plain commitments table
    const table = document.createElement("table");
    for (const { point, labels: pointLabels } of tabularModel(commitments)) {
      const row = document.createElement("tr");
      row.appendChild(text("td", formatPoint(point)));
      row.appendChild(text("td", pointLabels.join(", ")));
      table.appendChild(row);
    }
    el.heatmap.appendChild(table);
    return;
  }
  const model = buildHeatmapModel(features, labels, commitments, report?.delta.retracted ?? []);
  const grid = document.createElement("div");
  grid.className = "grid";
  grid.style.gridTemplateColumns = `repeat(${model.xAxis.length}, 14px)`;
  for (const row of model.cells) {
    for (const cell of row) {
      const node = document.createElement("div");
      node.className = "cell";
      if (cell.color) node.style.background = cell.color;
      else node.classList.add("hatched");
      if (cell.conflict) node.classList.add("conflict");
      if (cell.retracted) node.classList.add("retracted");
      node.title = `${formatPoint(cell.x)}: ${cell.labels.length ? cell.labels.join(", ") : "no commitment"}`;
      grid.appendChild(node);
    }
  }
  el.heatmap.appendChild(grid);
}

async function refresh(): Promise<void> {
  if (!view) return;
  renderSteps(view);
  renderAlerts(view);
  renderRetractions(view);
  const commitments = await client.commitments(view.sessionId);
  renderHeatmap(view, commitments);
}

function renderCard(card: Card): void {
  const node = text("div", "", `card ${card.tone}`);
  node.appendChild(text("div", card.title, "card-title"));
  for (const line of card.lines) node.appendChild(text("div", line, "card-line"));
  el.cards.prepend(node);
}

// ---------------------------------------------------------------------------
// actions

function buildQueryInputs(scenario: ScenarioMeta): void {
  el.queryInputs.replaceChildren();
  for (const feature of scenario.features) {
    const label = text("label", `${feature.name} `);
    const input = document.createElement("input");
    input.type = "number";
    input.name = feature.name;
    input.placeholder = `${feature.min}..${feature.max}`;
    label.appendChild(input);
    el.queryInputs.appendChild(label);
  }
}

async function startSession(): Promise<void> {
  const name = el.scenarioSelect.value;
  const created = await client.createSession(name);
  view = newView(created.session_id, created.scenario);
  window.location.hash = created.session_id;
  el.sessionLabel.textContent =
    `session ${created.session_id.slice(0, 8)} on ${created.scenario.name} (${created.scenario.entailment})`;
  buildQueryInputs(created.scenario);
  renderLegend(created.scenario.labels);
  el.cards.replaceChildren();
  await refresh();
}

async function submitQuery(event: Event): Promise<void> {
  event.preventDefault();
  if (!view) return;
  const inputs = [...el.queryInputs.querySelectorAll("input")];
  const values = inputs.map((input) => (input.value === "" ? null : Number(input.value)));
  const problem = validatePoint(view.scenario.features, values);
  el.queryError.textContent = problem ?? "";
  if (problem) return; // invalid points never reach the service
  try {
    const { report, raw } = await client.query(view.sessionId, values as number[]);
    view = applyReport(view, report, raw);
    await refresh();
  } catch (error) {
    el.queryError.textContent = error instanceof ApiError ? error.message : String(error);
  }
}

async function runPropertyCheck(): Promise<void> {
  if (!view) return;
  const property = el.propertySelect.value;
  const bound = { max_len: Number(el.boundInput.value) || 2 };
  try {
    const verdict = await client.runCheck(view.scenario.name, property, bound);
    renderCard(verdictCard(verdict));
  } catch (error) {
    const message = error instanceof ApiError ? error.message : String(error);
    renderCard(errorCard(property, message));
  }
}

async function resume(sessionId: string): Promise<void> {
  try {
    const info = await client.sessionInfo(sessionId);
    const transcript = await client.transcript(sessionId);
    view = fromTranscript(sessionId, info.scenario, transcript);
    el.sessionLabel.textContent =
      `session ${sessionId.slice(0, 8)} on ${info.scenario.name} (${info.scenario.entailment}), resumed`;
    buildQueryInputs(info.scenario);
    renderLegend(info.scenario.labels);
    await refresh();
  } catch {
    window.location.hash = "";
  }
}

async function init(): Promise<void> {
  scenarios = await client.scenarios();
  el.scenarioSelect.replaceChildren(
    ...scenarios.map((s) => new Option(`${s.name} (${s.entailment})`, s.name)),
  );
  el.startButton.addEventListener("click", () => void startSession());
  el.queryForm.addEventListener("submit", (event) => void submitQuery(event));
  el.runCheck.addEventListener("click", () => void runPropertyCheck());
  const hash = window.location.hash.replace(/^#/, "");
  if (hash) await resume(hash);
}

void init();

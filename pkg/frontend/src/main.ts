// DOM bootstrap: renders the tuner against the service that serves this page.

import { Client } from "./api.js";
import { pairedSignalCharts } from "./chart.js";
import { extremumPositions, fixed4, sliderRange } from "./format.js";
import { TunerModel, TunerSnapshot } from "./tuner.js";

const client = new Client("");
const model = new TunerModel(client, { debounceMs: 200, onChange: render });

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node as T;
}

function render(snapshot: TunerSnapshot): void {
  const status = el<HTMLDivElement>("status");
  const { state, evaluation } = snapshot;
  if (!state) {
    status.textContent =
      snapshot.phase === "error" ? `failed to load: ${snapshot.error}` : "loading session...";
    return;
  }

  status.className = `status status-${snapshot.phase}`;
  status.textContent =
    snapshot.phase === "stale"
      ? `revision ${snapshot.revision} - ${snapshot.error}`
      : snapshot.phase === "error"
        ? `error: ${snapshot.error}`
        : `basis ${state.basis}, level ${state.level}, revision ${snapshot.revision}` +
          (snapshot.phase === "pushing" ? " (updating...)" : "");
  el<HTMLButtonElement>("reapply").hidden = snapshot.phase !== "stale";

  if (evaluation) {
    const charts = pairedSignalCharts({
      before: state.delta,
      after: evaluation.delta_tilde,
      labels: state.labels,
      highlightBefore: state.extremums.map((e) => e.index),
      highlightAfter: extremumPositions(evaluation.delta_tilde, state.extremums.length),
      violations: evaluation.violations,
    });
    el("chart-before").innerHTML = charts.before;
    el("chart-after").innerHTML = charts.after;

    const feasibility = el<HTMLDivElement>("feasibility");
    if (evaluation.feasible) {
      feasibility.className = "feasible";
      feasibility.textContent = "feasible: all resolved concentrations within [0, 1]";
    } else {
      feasibility.className = "infeasible";
      feasibility.textContent =
        `out of range at position${evaluation.violations.length > 1 ? "s" : ""} ` +
        evaluation.violations.join(", ") + " - adjust coefficients or alpha";
    }

    const table = el<HTMLTableElement>("evaluation");
    const rows = state.labels.map((label, i) => {
      const violation = evaluation.violations.includes(i + 1);
      return (
        `<tr${violation ? ' class="violation"' : ""}><td>${label}</td>` +
        `<td>${fixed4(state.delta[i] ?? 0)}</td>` +
        `<td>${fixed4(evaluation.delta_tilde[i] ?? 0)}</td>` +
        `<td>${fixed4(evaluation.c1_tilde[i] ?? 0)}</td>` +
        `<td>${fixed4(evaluation.c2_tilde[i] ?? 0)}</td></tr>`
      );
    });
    table.innerHTML =
      "<tr><th>parameter</th><th>diff</th><th>masked diff</th>" +
      "<th>main conc.</th><th>sub conc.</th></tr>" + rows.join("");
  }

  renderEditors(snapshot);
  el<HTMLButtonElement>("commit").disabled =
    snapshot.phase !== "ready" || snapshot.dirty || !(evaluation?.feasible ?? false);
  el<HTMLSpanElement>("identity-warning").hidden = !model.isIdentity();
}

let editorsBuilt = false;

function renderEditors(snapshot: TunerSnapshot): void {
  const { state } = snapshot;
  if (!state) return;
  const container = el<HTMLDivElement>("coefficients");
  const range = sliderRange(state.a_k);

  if (!editorsBuilt) {
    editorsBuilt = true;
    container.innerHTML = "";
    state.a_k.forEach((_, i) => {
      const row = document.createElement("div");
      row.className = "coefficient-row";
      row.innerHTML =
        `<label>a[${i + 1}]</label>` +
        `<input type="range" id="slider-${i}" min="${range.min}" max="${range.max}" ` +
        `step="${range.step}">` +
        `<input type="number" id="number-${i}" step="0.0001">` +
        `<span class="original" id="original-${i}"></span>`;
      container.appendChild(row);
      const slider = row.querySelector<HTMLInputElement>(`#slider-${i}`)!;
      const number = row.querySelector<HTMLInputElement>(`#number-${i}`)!;
      slider.addEventListener("input", () => model.editCoefficient(i, Number(slider.value)));
      number.addEventListener("input", () => model.editCoefficient(i, Number(number.value)));
    });
    const alpha = el<HTMLInputElement>("alpha");
    alpha.addEventListener("input", () => model.setAlpha(Number(alpha.value)));
    el<HTMLButtonElement>("revert").addEventListener("click", () => model.revert());
    el<HTMLButtonElement>("reapply").addEventListener("click", () => void model.reapply());
    el<HTMLButtonElement>("commit").addEventListener("click", () => void doCommit());
  }

  state.a_k.forEach((original, i) => {
    const slider = document.getElementById(`slider-${i}`) as HTMLInputElement;
    const number = document.getElementById(`number-${i}`) as HTMLInputElement;
    const value = snapshot.edits[i] ?? original;
    if (document.activeElement !== slider) slider.value = String(value);
    if (document.activeElement !== number) number.value = value.toFixed(6);
    el<HTMLSpanElement>(`original-${i}`).textContent = `was ${fixed4(original)}`;
  });
  const alpha = el<HTMLInputElement>("alpha");
  if (document.activeElement !== alpha) alpha.value = String(snapshot.alpha);
}

async function doCommit(): Promise<void> {
  const result = el<HTMLDivElement>("commit-result");
  try {
    const reply = await model.commit();
    const lines = Object.entries(reply.outputs)
      .map(([kind, path]) => `<li><code>${kind}</code>: ${path}</li>`)
      .join("");
    result.className = "committed";
    result.innerHTML = `mask committed at revision ${reply.revision}:<ul>${lines}</ul>`;
  } catch (err) {
    result.className = "commit-failed";
    result.textContent = String(err instanceof Error ? err.message : err);
  }
}

void model.load();

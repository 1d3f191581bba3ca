import { ApiClient, ApiError, LatestRequest, debounce } from "./api.js";
import { renderComparePanel, YearPoint } from "./compare_panel.js";
import { renderFomTable } from "./fom_table.js";
import { renderNetworkPanel } from "./network_panel.js";
import {
  ExplorerState,
  initialState,
  pinCurrent,
  unpin,
  validateControls,
} from "./state.js";
import type { DesignControls } from "./types.js";

const SWEEP_YEARS = [2032, 2033, 2034, 2035, 2036, 2037, 2038, 2039, 2040];
const DEBOUNCE_MS = 250;

function byId<T extends HTMLElement>(id: string): T {
  const el = document.getElementById(id);
  if (!el) {
    throw new Error(`missing element #${id}`);
  }
  return el as T;
}

function readControls(): DesignControls {
  return {
    year: Number((byId<HTMLInputElement>("ctl-year")).value),
    total_power_w: Number((byId<HTMLInputElement>("ctl-power")).value),
    compute_type: (byId<HTMLSelectElement>("ctl-compute-type")).value,
    destination: (byId<HTMLSelectElement>("ctl-destination")).value,
    compute_power_fraction: Number(
      (byId<HTMLInputElement>("ctl-fraction")).value,
    ),
  };
}

function writeControls(controls: DesignControls): void {
  byId<HTMLInputElement>("ctl-year").value = String(controls.year);
  byId<HTMLInputElement>("ctl-power").value = String(controls.total_power_w);
  byId<HTMLSelectElement>("ctl-compute-type").value = controls.compute_type;
  byId<HTMLSelectElement>("ctl-destination").value = controls.destination;
  byId<HTMLInputElement>("ctl-fraction").value = String(
    controls.compute_power_fraction,
  );
}

export function start(): void {
  const api = new ApiClient("");
  let state: ExplorerState = initialState();
  const forecastGate = new LatestRequest();
  const networkGate = new LatestRequest();
  const sweepGate = new LatestRequest();
  let sweep: YearPoint[] | null = null;

  const designPanel = byId<HTMLDivElement>("design-panel");
  const networkPanel = byId<HTMLDivElement>("network-panel");
  const comparePanel = byId<HTMLDivElement>("compare-panel");

  function renderAll(): void {
    designPanel.innerHTML = renderFomTable(state.forecast, {
      loading: state.loading.forecast,
      errors: state.fieldErrors,
    });
    networkPanel.innerHTML = renderNetworkPanel(state.network, state.selectedLink, {
      loading: state.loading.network,
    });
    comparePanel.innerHTML = renderComparePanel(state.pinned, sweep);
    byId<HTMLButtonElement>("btn-pin").disabled =
      state.forecast === null || state.pinned.length >= 4;
    renderPinChips();
    bindNetworkRows();
  }

  function renderPinChips(): void {
    const chips = byId<HTMLDivElement>("pin-chips");
    chips.innerHTML = state.pinned
      .map(
        (p, i) =>
          `<button class="chip" data-unpin="${i}">${p.label} ✕</button>`,
      )
      .join(" ");
    chips.querySelectorAll<HTMLButtonElement>("[data-unpin]").forEach((btn) => {
      btn.addEventListener("click", () => {
        state = unpin(state, Number(btn.dataset.unpin));
        renderAll();
      });
    });
  }

  function bindNetworkRows(): void {
    networkPanel
      .querySelectorAll<HTMLTableRowElement>("tbody tr[data-link]")
      .forEach((row) => {
        row.addEventListener("click", () => {
          state = { ...state, selectedLink: row.dataset.link ?? null };
          renderAll();
        });
      });
  }

  async function refreshForecast(): Promise<void> {
    state = { ...state, controls: readControls() };
    const errors = validateControls(state.controls);
    if (errors.length > 0) {
      state = { ...state, fieldErrors: errors, loading: { ...state.loading, forecast: false } };
      renderAll();
      return;
    }
    state = { ...state, fieldErrors: [], loading: { ...state.loading, forecast: true } };
    renderAll();
    try {
      const fom = await forecastGate.run((signal) =>
        api.postForecast(state.controls, state.workload, signal),
      );
      if (fom !== undefined) {
        state = { ...state, forecast: fom, loading: { ...state.loading, forecast: false } };
      }
    } catch (err) {
      const errors = err instanceof ApiError ? err.errors : [
        { path: "api", message: String(err) },
      ];
      state = { ...state, fieldErrors: errors, loading: { ...state.loading, forecast: false } };
    }
    renderAll();
  }

  async function refreshNetwork(): Promise<void> {
    state = { ...state, loading: { ...state.loading, network: true } };
    renderAll();
    const body = {
      constellation: {
        planes: Number(byId<HTMLInputElement>("ctl-planes").value),
        sats_per_plane: Number(byId<HTMLInputElement>("ctl-sats").value),
        inclination_deg: 0.0,
      },
      link_policy: {
        exclusion_angle_deg: Number(byId<HTMLInputElement>("ctl-exclusion").value),
      },
      time_grid: { horizon_s: 5730.0, step_s: 30.0 },
    };
    try {
      const summary = await networkGate.run((signal) =>
        api.postNetworkSummary(body, signal),
      );
      if (summary !== undefined) {
        const selected =
          summary.outage.find((r) => r.link_id === state.selectedLink)?.link_id ??
          summary.outage[0]?.link_id ??
          null;
        state = {
          ...state,
          network: summary,
          selectedLink: selected,
          loading: { ...state.loading, network: false },
        };
      }
    } catch (err) {
      state = { ...state, loading: { ...state.loading, network: false } };
      console.error("network summary failed", err);
    }
    renderAll();
  }

  async function refreshSweep(): Promise<void> {
    const points = await sweepGate.run(async (signal) => {
      const out: YearPoint[] = [];
      for (const year of SWEEP_YEARS) {
        const fom = await api.postForecast(
          { ...state.controls, year },
          state.workload,
          signal,
        );
        out.push({ year, fom });
      }
      return out;
    });
    if (points !== undefined) {
      sweep = points;
      renderAll();
    }
  }

  const debouncedForecast = debounce(() => void refreshForecast(), DEBOUNCE_MS);
  for (const id of [
    "ctl-year", "ctl-power", "ctl-fraction", "ctl-compute-type",
    "ctl-destination",
  ]) {
    byId(id).addEventListener("input", debouncedForecast);
    byId(id).addEventListener("change", debouncedForecast);
  }
  byId<HTMLSelectElement>("ctl-workload").addEventListener("change", () => {
    state = { ...state, workload: byId<HTMLSelectElement>("ctl-workload").value };
    debouncedForecast();
  });
  byId<HTMLButtonElement>("btn-network").addEventListener("click", () =>
    void refreshNetwork(),
  );
  byId<HTMLButtonElement>("btn-pin").addEventListener("click", () => {
    const label = `${state.preset ?? "custom"} ${state.controls.year}/${state.controls.total_power_w}W`;
    state = pinCurrent(state, label);
    renderAll();
    void refreshSweep();
  });

  void (async () => {
    try {
      const presets = await api.getPresets();
      const bar = byId<HTMLDivElement>("preset-bar");
      bar.innerHTML = presets.presets
        .map(
          (p) =>
            `<button class="preset" data-preset="${p.name}">Use Case ${p.name.replace("uc", "")}</button>`,
        )
        .join(" ");
      bar.querySelectorAll<HTMLButtonElement>("[data-preset]").forEach((btn) => {
        btn.addEventListener("click", () => {
          const preset = presets.presets.find(
            (p) => p.name === btn.dataset.preset,
          );
          if (!preset) {
            return;
          }
          state = {
            ...state,
            preset: preset.name,
            workload: preset.workload,
            controls: { ...preset.design },
          };
          writeControls(state.controls);
          byId<HTMLSelectElement>("ctl-workload").value = String(
            typeof preset.workload === "string" ? preset.workload : "uc1",
          );
          void refreshForecast();
        });
      });
    } catch (err) {
      console.error("preset listing failed", err);
    }
    void refreshForecast();
    void refreshNetwork();
  })();
}

if (typeof document !== "undefined" && document.getElementById("design-panel")) {
  start();
}

import type {
  ApiErrorItem,
  DesignControls,
  FiguresOfMerit,
  NetworkSummary,
  WorkloadRef,
} from "./types.js";

export const MAX_PINS = 4;

export interface PinnedDesign {
  label: string;
  design: DesignControls;
  fom: FiguresOfMerit;
}

export interface ExplorerState {
  controls: DesignControls;
  workload: WorkloadRef;
  preset: string | null;
  forecast: FiguresOfMerit | null;
  network: NetworkSummary | null;
  selectedLink: string | null;
  pinned: PinnedDesign[];
  fieldErrors: ApiErrorItem[];
  loading: { forecast: boolean; network: boolean };
}

export function initialState(): ExplorerState {
  return {
    controls: {
      year: 2032,
      total_power_w: 500,
      compute_type: "gpu_equivalent",
      destination: "leo",
      compute_power_fraction: 1.0,
    },
    workload: "uc1",
    preset: "uc1",
    forecast: null,
    network: null,
    selectedLink: null,
    pinned: [],
    fieldErrors: [],
    loading: { forecast: false, network: false },
  };
}

/** Client-side gate before any request goes out: obviously invalid controls
 * produce inline errors and no traffic. Mirrors the server's field paths. */
export function validateControls(controls: DesignControls): ApiErrorItem[] {
  const errors: ApiErrorItem[] = [];
  if (!Number.isFinite(controls.total_power_w) || controls.total_power_w <= 0) {
    errors.push({ path: "design.total_power_w", message: "power must be positive" });
  }
  if (!Number.isInteger(controls.year)) {
    errors.push({ path: "design.year", message: "year must be an integer" });
  }
  if (
    !(controls.compute_power_fraction > 0) ||
    controls.compute_power_fraction > 1
  ) {
    errors.push({
      path: "design.compute_power_fraction",
      message: "fraction must be in (0, 1]",
    });
  }
  return errors;
}

export function canPin(state: ExplorerState): boolean {
  return state.forecast !== null && state.pinned.length < MAX_PINS;
}

export function pinCurrent(state: ExplorerState, label: string): ExplorerState {
  if (!canPin(state) || state.forecast === null) {
    return state;
  }
  const pin: PinnedDesign = {
    label,
    design: { ...state.controls },
    fom: state.forecast,
  };
  return { ...state, pinned: [...state.pinned, pin] };
}

export function unpin(state: ExplorerState, index: number): ExplorerState {
  return { ...state, pinned: state.pinned.filter((_, i) => i !== index) };
}

/** DTOs mirroring the sdcsim API responses. The UI never derives these
 * numbers itself; everything displayed originates from one of these shapes. */

export interface FiguresOfMerit {
  available_compute_tflops: number;
  required_compute_tflops: number;
  satellite_mass_kg: number;
  compute_efficiency_w_per_tflops: number;
  cost_of_power_eur_per_w: number | null;
  cost_of_compute_eur_per_tflops: number | null;
  total_cost_eur: number;
  compute_shortfall: boolean;
}

export interface DesignControls {
  year: number;
  total_power_w: number;
  compute_type: string;
  destination: string;
  compute_power_fraction: number;
}

export type WorkloadRef = string | Record<string, unknown>;

export interface ApiErrorItem {
  path: string;
  message: string;
}

export interface OutageRow {
  link_id: string;
  kind: string;
  max_outage_s: number;
  outage_fraction: number;
  buffer_MB: number;
  up_intervals: Array<[number, number]>;
}

export interface WorstCaseRoute {
  src: string;
  dst: string;
  epoch_count: number;
  unreachable_fraction: number;
  min_latency_s: number | null;
  max_latency_s: number | null;
  mean_latency_s: number | null;
  max_route: {
    t: number;
    latency_s: number;
    hop_count: number;
    blocked_detour: boolean;
    path: string[];
  } | null;
}

export interface NetworkSummary {
  snapshots: {
    epoch_count: number;
    node_count: number;
    step_s: number;
    edge_status_totals: Record<string, number>;
  };
  horizon: [number, number];
  outage: OutageRow[];
  stream_rate_MBps: number;
  worst_case_route: WorstCaseRoute | null;
}

export interface PresetInfo {
  name: string;
  design: DesignControls;
  workload: WorkloadRef;
}

export interface PresetsResponse {
  presets: PresetInfo[];
}

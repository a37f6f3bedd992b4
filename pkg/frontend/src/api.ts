/** Typed client for the planner's JSON HTTP API. */

export interface PanelDto {
  width_m: number;
  end_on_x: [number, number];
  end_on_y: [number, number];
  center: [number, number];
}

export interface AnglesDto {
  alpha_deg: number;
  beta_deg: number;
  gamma_deg: number;
  residual_rad: number;
  panel: PanelDto;
}

export interface PathDto {
  vertices: [number, number][];
  walls: string[];
  materials: string[];
  length_m: number;
  delay_ns: number;
  gain_db: number | null;
}

export interface SimulateResponse {
  schema: number;
  tx: [number, number];
  rx: [number, number];
  panel_enabled: boolean;
  alpha_used_deg: number;
  angles: AnglesDto;
  panel: PanelDto;
  los: boolean;
  path_loss_db: number | null;
  n_paths: number;
  paths: PathDto[];
  noise_floor_db: number | null;
}

export interface CampaignRecordDto {
  index: number;
  tx: [number, number];
  los: boolean;
  pl_without_db: number | null;
  pl_with_db: number | null;
  improvement_db: number | null;
}

export interface CampaignResponse {
  angles: AnglesDto;
  rx: [number, number];
  improvement_argmax: { index: number; improvement_db: number | null };
  records: CampaignRecordDto[];
  config: { noise_floor_db: number | null; tx: { count: number } };
}

export interface CoverageResponse {
  xs: number[];
  ys: number[];
  pl_db: (number | null)[][];
  panel_enabled: boolean;
  alpha_used_deg: number;
  angles: AnglesDto;
  rx: [number, number];
  noise_floor_db: number | null;
}

export interface LayoutDto {
  L_T: number;
  L_R: number;
  l_T: number;
  l_R: number;
  walls: unknown[];
}

export interface ConfigDto {
  layout: LayoutDto;
  panel: { width_m: number; material: string };
  tx: { count: number; step_m: number; axis_x_m: number | null };
  rx: { position: [number, number] | null };
  noise_floor_db: number | null;
}

export interface SimulateRequest {
  tx?: [number, number];
  tx_index?: number;
  panel_enabled?: boolean;
  alpha_override_deg?: number;
}

export interface ApiClient {
  defaultConfig(): Promise<ConfigDto>;
  simulate(body: SimulateRequest): Promise<SimulateResponse>;
  campaign(): Promise<CampaignResponse>;
  coverage(panelEnabled: boolean, stepM: number, alphaDeg?: number): Promise<CoverageResponse>;
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

async function decode<T>(response: Response): Promise<T> {
  if (!response.ok) {
    let detail = `HTTP ${response.status}`;
    try {
      const body = (await response.json()) as { detail?: string };
      if (body.detail) {
        detail = body.detail;
      }
    } catch {
      // non-JSON error body; keep the status text
    }
    throw new Error(detail);
  }
  return (await response.json()) as T;
}

export function createClient(base = "", fetchFn: FetchLike = fetch): ApiClient {
  const post = async <T>(route: string, body: unknown): Promise<T> =>
    decode<T>(
      await fetchFn(base + route, {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify(body),
      }),
    );

  return {
    defaultConfig: async () => decode<ConfigDto>(await fetchFn(base + "/api/default-config")),
    simulate: (body) => post<SimulateResponse>("/api/simulate", body),
    campaign: () => post<CampaignResponse>("/api/campaign", {}),
    coverage: (panelEnabled, stepM, alphaDeg) =>
      post<CoverageResponse>("/api/coverage", {
        panel_enabled: panelEnabled,
        step_m: stepM,
        ...(alphaDeg === undefined ? {} : { alpha_override_deg: alphaDeg }),
      }),
  };
}

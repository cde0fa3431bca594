// Typed client for the drafting service HTTP API. All server access in the
// UI goes through this module; nothing else talks to the network.

export interface SectionSummary {
  section_id: string;
  header: string;
  body: string;
  position: number;
  degraded: boolean;
  generation_count: number;
  modification_count: number;
  selection: Selection;
  custom_bullets: string;
  custom_instructions: string;
  starting_text: string;
  context_toggle: boolean;
  grounding_toggle: boolean;
  length: string;
}

export interface Selection {
  selected_bullets: string[];
  selected_paragraphs: string[];
}

export interface WorkspaceState {
  workspace_id: string;
  status: "pending" | "ready" | "failed";
  version: number;
  error: string | null;
  title?: string;
  sections?: SectionSummary[];
  word_count?: number;
  preview?: string;
}

export interface Bullet {
  bullet_id: string;
  para_id: string;
  text: string;
  ordinal: number;
}

export interface OutlineGroup {
  para_id: string;
  bullets: Bullet[];
}

export interface OutlineResponse {
  outline: { doc_id: string; groups: OutlineGroup[]; degraded_para_ids: string[] };
  paragraphs: Record<string, string>;
  selections: Record<string, Selection>;
  version: number;
}

export interface HistoryRecord {
  inputs: {
    selected_bullets: string[];
    selected_paragraphs: string[];
    [key: string]: unknown;
  };
  prompt: string;
  output: string;
  timestamp: number;
  template_version: string;
  kind?: string;
}

export interface HistoryPage {
  kind: string;
  index: number;
  total: number;
  pager: string;
  record: HistoryRecord;
}

export interface Toggle {
  kind: "bullet" | "paragraph";
  id: string;
}

export type BodyEdit =
  | { op: "insert"; pos: number; text: string }
  | { op: "delete"; start: number; end: number };

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    message: string,
    public details: unknown = null,
  ) {
    super(message);
  }
}

export class PostdraftClient {
  constructor(private baseUrl: string) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const resp = await fetch(this.baseUrl + path, {
      method,
      headers: body === undefined ? {} : { "Content-Type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    if (!resp.ok) {
      let code = "unknown";
      let message = resp.statusText;
      let details: unknown = null;
      try {
        const payload = await resp.json();
        code = payload.code ?? code;
        message = payload.message ?? message;
        details = payload.details ?? null;
      } catch {
        // non-JSON error body; keep the status text
      }
      throw new ApiError(resp.status, code, message, details);
    }
    return resp.json() as Promise<T>;
  }

  health(): Promise<{ status: string; mock: boolean }> {
    return this.request("GET", "/healthz");
  }

  createWorkspace(body: { document?: unknown; markdown?: string; title?: string }) {
    return this.request<{ workspace_id: string; status: string }>(
      "POST",
      "/workspaces",
      body,
    );
  }

  getWorkspace(id: string): Promise<WorkspaceState> {
    return this.request("GET", `/workspaces/${id}`);
  }

  /** Poll until the warm start finishes; rejects if it fails or times out. */
  async waitUntilReady(id: string, timeoutMs = 30_000): Promise<WorkspaceState> {
    const deadline = Date.now() + timeoutMs;
    while (Date.now() < deadline) {
      const state = await this.getWorkspace(id);
      if (state.status === "ready") return state;
      if (state.status === "failed") {
        throw new ApiError(502, "provider_error", state.error ?? "warm start failed");
      }
      await new Promise((r) => setTimeout(r, 50));
    }
    throw new ApiError(504, "timeout", "warm start did not finish in time");
  }

  getOutline(id: string): Promise<OutlineResponse> {
    return this.request("GET", `/workspaces/${id}/outline`);
  }

  toggleSelection(id: string, sectionId: string, toggles: Toggle[], version?: number) {
    return this.request<{ version: number; selection: Selection }>(
      "PATCH",
      `/workspaces/${id}/sections/${sectionId}/selection`,
      { toggles, ...(version === undefined ? {} : { version }) },
    );
  }

  patchWorkspaceFields(id: string, sectionId: string, fields: Record<string, unknown>) {
    return this.request<{ version: number }>(
      "PATCH",
      `/workspaces/${id}/sections/${sectionId}/workspace`,
      { fields },
    );
  }

  generate(id: string, sectionId: string, version?: number) {
    return this.request<{ version: number; record: HistoryRecord; pager: string }>(
      "POST",
      `/workspaces/${id}/sections/${sectionId}/generate`,
      version === undefined ? {} : { version },
    );
  }

  modify(
    id: string,
    sectionId: string,
    body: { kind: string; text: string; length?: string; custom_instructions?: string },
  ) {
    return this.request<{ version: number; record: HistoryRecord; pager: string }>(
      "POST",
      `/workspaces/${id}/sections/${sectionId}/modify`,
      body,
    );
  }

  addSection(id: string, body: { after: string; header: string; mode: "blank" | "generated" }) {
    return this.request<{ version: number; section_id: string; position: number }>(
      "POST",
      `/workspaces/${id}/sections`,
      body,
    );
  }

  moveSection(id: string, sectionId: string, direction: "up" | "down") {
    return this.request<{ version: number; moved: boolean }>(
      "PATCH",
      `/workspaces/${id}/sections/${sectionId}`,
      { action: direction === "up" ? "move_up" : "move_down" },
    );
  }

  deleteSection(id: string, sectionId: string) {
    return this.request<{ version: number }>(
      "PATCH",
      `/workspaces/${id}/sections/${sectionId}`,
      { action: "delete" },
    );
  }

  editBody(id: string, sectionId: string, edit: BodyEdit) {
    return this.request<{ version: number; body: string }>(
      "PATCH",
      `/workspaces/${id}/sections/${sectionId}`,
      { action: "edit", edit },
    );
  }

  getHistory(id: string, sectionId: string, kind: "generation" | "modification", index?: number) {
    const query =
      `kind=${kind}` + (index === undefined ? "" : `&index=${index}`);
    return this.request<HistoryPage>(
      "GET",
      `/workspaces/${id}/sections/${sectionId}/history?${query}`,
    );
  }

  save(id: string) {
    return this.request<{ version: number; saved: boolean }>(
      "POST",
      `/workspaces/${id}/save`,
      {},
    );
  }

  async analyticsReport(id: string): Promise<string> {
    const resp = await fetch(`${this.baseUrl}/workspaces/${id}/analytics/report`);
    if (!resp.ok) {
      const payload = await resp.json();
      throw new ApiError(resp.status, payload.code, payload.message);
    }
    return resp.text();
  }
}

// Section editor view model: history pager navigation and the
// copy-generation action that inserts a history result into the body.

import type { BodyEdit, HistoryPage, PostdraftClient } from "./api.js";

export function pagerLabel(index: number, total: number): string {
  if (total === 0) return "0/0";
  return `${index + 1}/${total}`;
}

export interface PagerState {
  kind: "generation" | "modification";
  index: number;
  total: number;
}

export class HistoryPager {
  state: PagerState;

  constructor(
    private client: PostdraftClient,
    private workspaceId: string,
    private sectionId: string,
    kind: "generation" | "modification" = "generation",
  ) {
    this.state = { kind, index: -1, total: 0 };
  }

  get label(): string {
    return pagerLabel(this.state.index, this.state.total);
  }

  /** Load the newest record (or the one at `index`). */
  async load(index?: number): Promise<HistoryPage> {
    const page = await this.client.getHistory(
      this.workspaceId,
      this.sectionId,
      this.state.kind,
      index,
    );
    this.state = { kind: this.state.kind, index: page.index, total: page.total };
    return page;
  }

  async previous(): Promise<HistoryPage | null> {
    if (this.state.index <= 0) return null;
    return this.load(this.state.index - 1);
  }

  async next(): Promise<HistoryPage | null> {
    if (this.state.index >= this.state.total - 1) return null;
    return this.load(this.state.index + 1);
  }
}

/**
 * Copy a history record's output into the section body at `pos`.
 *
 * The whole paste is one span insert, so the server logs exactly one
 * writing action regardless of the pasted length.
 */
export async function copyGenerationIntoBody(
  client: PostdraftClient,
  workspaceId: string,
  sectionId: string,
  output: string,
  pos: number,
): Promise<{ version: number; body: string }> {
  const edit: BodyEdit = { op: "insert", pos, text: output };
  return client.editBody(workspaceId, sectionId, edit);
}

// Outline panel view model: the checkbox tree over paragraphs and bullets,
// and the "Show Selected Only" filter with its cross-tab notes. Pure
// functions over API responses so the rendering layer stays trivial.

import type { OutlineResponse, Selection } from "./api.js";

// Verbatim note text shown when an item is hidden by the filter but its
// counterpart on the other tab is still selected.
export const BULLET_STILL_SELECTED_NOTE =
  "A corresponding bulletpoint(s) is still selected";
export const PARAGRAPH_STILL_SELECTED_NOTE =
  "A corresponding paragraph is still selected";

export type OutlineTab = "bullets" | "paragraphs";

export interface ViewEntry {
  itemId: string;
  text?: string;
  note?: string;
}

export interface TreeRow {
  kind: "paragraph" | "bullet";
  itemId: string;
  text: string;
  checked: boolean;
  degraded: boolean;
  /** bullets carry their parent paragraph id */
  parentId?: string;
}

/** Full checkbox tree: one paragraph row followed by its bullet rows. */
export function outlineTree(outline: OutlineResponse, selection: Selection): TreeRow[] {
  const degraded = new Set(outline.outline.degraded_para_ids);
  const selectedBullets = new Set(selection.selected_bullets);
  const selectedParagraphs = new Set(selection.selected_paragraphs);
  const rows: TreeRow[] = [];
  for (const group of outline.outline.groups) {
    rows.push({
      kind: "paragraph",
      itemId: group.para_id,
      text: outline.paragraphs[group.para_id] ?? "",
      checked: selectedParagraphs.has(group.para_id),
      degraded: degraded.has(group.para_id),
    });
    for (const bullet of group.bullets) {
      rows.push({
        kind: "bullet",
        itemId: bullet.bullet_id,
        text: bullet.text,
        checked: selectedBullets.has(bullet.bullet_id),
        degraded: degraded.has(group.para_id),
        parentId: group.para_id,
      });
    }
  }
  return rows;
}

/**
 * "Show Selected Only" view for the active tab. Selected items appear with
 * their text; an unselected item whose counterpart on the other tab is
 * selected appears as a note-only entry in its slot.
 */
export function selectedOnlyView(
  outline: OutlineResponse,
  selection: Selection,
  tab: OutlineTab,
): ViewEntry[] {
  const selectedBullets = new Set(selection.selected_bullets);
  const selectedParagraphs = new Set(selection.selected_paragraphs);
  const entries: ViewEntry[] = [];
  if (tab === "paragraphs") {
    for (const group of outline.outline.groups) {
      if (selectedParagraphs.has(group.para_id)) {
        entries.push({
          itemId: group.para_id,
          text: outline.paragraphs[group.para_id] ?? "",
        });
      } else if (group.bullets.some((b) => selectedBullets.has(b.bullet_id))) {
        entries.push({ itemId: group.para_id, note: BULLET_STILL_SELECTED_NOTE });
      }
    }
  } else {
    for (const group of outline.outline.groups) {
      for (const bullet of group.bullets) {
        if (selectedBullets.has(bullet.bullet_id)) {
          entries.push({ itemId: bullet.bullet_id, text: bullet.text });
        } else if (selectedParagraphs.has(group.para_id)) {
          entries.push({
            itemId: bullet.bullet_id,
            note: PARAGRAPH_STILL_SELECTED_NOTE,
          });
        }
      }
    }
  }
  return entries;
}

/** Render view entries as plain text lines, notes in brackets. */
export function renderEntries(entries: ViewEntry[]): string {
  return entries
    .map((e) => (e.note !== undefined ? `[${e.note}]` : `- ${e.text}`))
    .join("\n");
}

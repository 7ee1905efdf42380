// Copyright 2026 The smellgen Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

package demo.shop;

import java.util.ArrayList;
import java.util.List;

public class Invoice {
    private final Customer customer;
    private final List<Line> lines = new ArrayList<>();
    private double taxRate = 0.2;
    private String currency = "EUR";
    private int number;

    public Invoice(Customer customer, int number) {
        this.customer = customer;
        this.number = number;
    }

    public void add(Line line) {
        lines.add(line);
    }

    public double net() {
        double sum = 0;
        for (Line l : lines) {
            sum += l.subtotal();
        }
        return sum;
    }

    public double tax() {
        return net() * taxRate;
    }

    public String render() {
        StringBuilder out = new StringBuilder();
        out.append("Invoice #").append(number).append('\n');
        out.append(header());
        for (Line l : lines) {
            out.append("  ").append(l.describe());
            out.append(" = ").append(l.subtotal()).append(' ').append(currency);
            out.append('\n');
        }
        double net = net();
        out.append("Net: ").append(net).append(' ').append(currency).append('\n');
        out.append("Tax: ").append(tax()).append(' ').append(currency).append('\n');
        out.append("Total: ").append(net + tax()).append(' ').append(currency);
        out.append('\n');
        if (customer.isLoyal()) {
            out.append("Thank you for being a loyal customer!\n");
        }
        appendFooter(out);
        return out.toString();
    }

    private String header() {
        StringBuilder h = new StringBuilder();
        h.append("Bill to:\n");
        h.append(customer.name).append('\n');
        h.append(customer.street).append('\n');
        h.append(customer.zip).append(' ').append(customer.city).append('\n');
        if (customer.email != null) {
            h.append("Contact: ").append(customer.email).append('\n');
        }
        if (customer.phone != null) {
            h.append("Phone: ").append(customer.phone).append('\n');
        }
        h.append('\n');
        return h.toString();
    }

    private void appendFooter(StringBuilder out) {
        out.append("----\n");
        out.append("Payable within 30 days.\n");
        out.append("Questions? Reply to this invoice.\n");
        out.append("Reference: ").append(number).append('\n');
    }

    public int points() {
        int points = (int) net() / 10;
        customer.reward(points);
        return points;
    }
}

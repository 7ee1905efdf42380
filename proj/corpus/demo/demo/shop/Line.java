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

public class Line {
    String product;
    int quantity;
    double unitPrice;
    double discount;

    public Line(String product, int quantity, double unitPrice) {
        this.product = product;
        this.quantity = quantity;
        this.unitPrice = unitPrice;
    }

    public double subtotal() {
        double gross = quantity * unitPrice;
        return gross - gross * discount;
    }

    public String describe() {
        return quantity + " x " + product + " @ " + unitPrice;
    }
}
